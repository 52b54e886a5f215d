//! The three-qutrit solver circuit.
//!
//! Wire 0 (clock) estimates one ternary digit of each eigenvalue, wire 1
//! (data) carries the right-hand side into the solution, wire 2 (ancilla) is
//! rotated per clock digit and post-selected on |2⟩. The sequence is: clock
//! Hadamard, controlled powers of the phase unitary, inverse clock Hadamard,
//! digit-selected ancilla rotation, the exact adjoint of the first three
//! steps, then post-selection.

use num_complex::Complex64;
use thiserror::Error;

use crate::gates::{
    controlled_power, controlled_select, exp_generator, gell_mann, phase_unitary, qutrit_hadamard,
    GateError, GellMannLabel, RotationForm, RotationParams, UnitaryGate,
};
use crate::spectral::{
    classical_solution, eigh, SLEProblem, SpectralDecomposition, SpectralError,
};
use crate::state::{StateError, StateVector, WireLayout};

pub const CLOCK_WIRE: usize = 0;
pub const DATA_WIRE: usize = 1;
pub const ANCILLA_WIRE: usize = 2;

/// Ancilla digit whose measurement marks a successful run.
pub const SUCCESS_DIGIT: usize = 2;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("the solver circuit handles 3x3 systems, got dimension {dimension}")]
    NotThreeDimensional { dimension: usize },
    #[error("digit position must be at least 1")]
    ZeroDigitPosition,
    #[error("eigenvalue {value} at index {index} outside the admissible interval (0, 1)")]
    EigenvalueOutOfRange { index: usize, value: f64 },
    #[error("eigenvalues collide at ternary digit position {position}: digits {digits:?}")]
    DigitCollision { position: u32, digits: [usize; 3] },
    #[error("C must be positive, got {scale}")]
    NonPositiveScale { scale: f64 },
    #[error("C exceeds smallest eigenvalue: C = {scale}, min eigenvalue = {min_eigenvalue}")]
    ScaleTooLarge { scale: f64, min_eigenvalue: f64 },
    #[error("post-selection impossible: ancilla |2> probability {probability:.3e}")]
    PostSelectionImpossible { probability: f64 },
    #[error("invalid scan specification: {reason}")]
    InvalidScan { reason: String },
}

/// How the digit-selected ancilla rotation is built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Semantics {
    /// Rotations `exp(-i·arcsin(C/λ(c))·λ5)` derived from the spectral
    /// decomposition, so the ancilla |2⟩ amplitude is exactly `C/λ(c)`.
    /// Usable when the eigenvalues are known; the scan is the search path
    /// when they are not.
    Ideal { scale: f64 },
    /// Rotations parameterized by three free angles; clock digit c selects
    /// the c-th factor of the composite rotation.
    DigitSelect(RotationParams),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    /// Ternary digit position estimated into the clock.
    pub digit_position: u32,
    pub semantics: Semantics,
    /// Record the state after phase estimation, after the controlled
    /// rotation, and after uncomputation.
    pub keep_intermediates: bool,
}

/// States recorded along the run when requested.
#[derive(Debug, Clone)]
pub struct Intermediates {
    pub after_phase_estimation: StateVector,
    pub after_rotation: StateVector,
    pub after_uncompute: StateVector,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    /// Normalized data-wire state after post-selection (dimension 3).
    pub solution_state: StateVector,
    /// Probability of measuring the ancilla in |2⟩.
    pub success_probability: f64,
    /// 1 - P(clock = 0) on the post-selected state. Near zero whenever phase
    /// estimation is exact for the instance.
    pub clock_residual: f64,
    /// Fidelity of `solution_state` against the classical solution.
    pub oracle_fidelity: Option<f64>,
    pub intermediates: Option<Intermediates>,
}

/// The clock digit phase estimation concentrates on for each eigenvalue:
/// `round(λ · 3^n) mod 3`, the n-th ternary digit read with rounding so a
/// value a hair below a terminating expansion wraps the same way the
/// estimated phase does.
fn estimation_digits(eigenvalues: &[f64], digit_position: u32) -> Result<[usize; 3], PipelineError> {
    let factor = 3f64.powi(digit_position as i32);
    let mut digits = [0usize; 3];
    for (slot, &value) in digits.iter_mut().zip(eigenvalues.iter()) {
        *slot = ((value * factor).round() as i64).rem_euclid(3) as usize;
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if digits[i] == digits[j] {
                return Err(PipelineError::DigitCollision {
                    position: digit_position,
                    digits,
                });
            }
        }
    }
    Ok(digits)
}

/// Rotation angles for the ideal semantics, indexed by clock digit:
/// `arcsin(C / λ(c))` where `λ(c)` is the eigenvalue whose estimated digit
/// is `c`. The pipeline applies them with a negative sign so the ancilla
/// |2⟩ amplitude comes out `+C/λ(c)`.
pub fn ideal_rotation_angles(
    decomposition: &SpectralDecomposition,
    scale: f64,
    digit_position: u32,
) -> Result<[f64; 3], PipelineError> {
    if decomposition.dimension() != 3 {
        return Err(PipelineError::NotThreeDimensional {
            dimension: decomposition.dimension(),
        });
    }
    if digit_position == 0 {
        return Err(PipelineError::ZeroDigitPosition);
    }
    if scale <= 0.0 {
        return Err(PipelineError::NonPositiveScale { scale });
    }
    let min_eigenvalue = decomposition.eigenvalues()[0];
    if scale > min_eigenvalue * (1.0 + 1e-12) {
        return Err(PipelineError::ScaleTooLarge {
            scale,
            min_eigenvalue,
        });
    }
    let digits = estimation_digits(decomposition.eigenvalues(), digit_position)?;
    let mut angles = [0.0f64; 3];
    for (j, &digit) in digits.iter().enumerate() {
        let ratio = (scale / decomposition.eigenvalues()[j]).min(1.0);
        angles[digit] = ratio.asin();
    }
    Ok(angles)
}

/// `Σ_j |β_j|² C² / λ_j²`, the post-selection success probability under
/// ideal rotations with exact phase estimation.
pub fn analytic_success_probability(eigenvalues: &[f64], betas: &[Complex64], scale: f64) -> f64 {
    eigenvalues
        .iter()
        .zip(betas.iter())
        .map(|(&lambda, beta)| beta.norm_sqr() * scale * scale / (lambda * lambda))
        .sum()
}

/// Everything about a problem instance that does not depend on the rotation
/// angles: validated spectral data, the fixed circuit gates, and the
/// classical reference solution. Lets a scan pay the setup cost once.
pub(crate) struct CompiledCircuit {
    pub(crate) decomposition: SpectralDecomposition,
    digit_position: u32,
    initial: StateVector,
    hadamard: UnitaryGate,
    hadamard_adjoint: UnitaryGate,
    controlled_phase: UnitaryGate,
    controlled_phase_adjoint: UnitaryGate,
    oracle_state: StateVector,
}

impl CompiledCircuit {
    pub(crate) fn compile(
        problem: &SLEProblem,
        digit_position: u32,
    ) -> Result<Self, PipelineError> {
        if problem.matrix().dimension() != 3 {
            return Err(PipelineError::NotThreeDimensional {
                dimension: problem.matrix().dimension(),
            });
        }
        if digit_position == 0 {
            return Err(PipelineError::ZeroDigitPosition);
        }
        let decomposition = eigh(problem.matrix())?;
        for (index, &value) in decomposition.eigenvalues().iter().enumerate() {
            if value <= 0.0 || value >= 1.0 {
                return Err(PipelineError::EigenvalueOutOfRange { index, value });
            }
        }
        estimation_digits(decomposition.eigenvalues(), digit_position)?;

        let rhs = problem.normalized_rhs();
        let layout = WireLayout::qutrits(3);
        let mut amplitudes = vec![Complex64::ZERO; layout.dimension()];
        for (d, &value) in rhs.iter().enumerate() {
            amplitudes[layout.index_of(&[0, d, 0]).expect("digits in range")] = value;
        }
        let (initial, _) = StateVector::from_amplitudes(layout, &amplitudes)?;

        let hadamard = qutrit_hadamard();
        let phase = phase_unitary(problem.matrix(), digit_position)?;
        let controlled_phase = controlled_power(&phase, 3)?;

        let oracle = classical_solution(problem)?;
        let (oracle_state, _) = StateVector::from_amplitudes(WireLayout::qutrits(1), &oracle)?;

        Ok(Self {
            decomposition,
            digit_position,
            initial,
            hadamard_adjoint: hadamard.adjoint(),
            hadamard,
            controlled_phase_adjoint: controlled_phase.adjoint(),
            controlled_phase,
            oracle_state,
        })
    }

    /// The three ancilla rotations, indexed by clock digit.
    pub(crate) fn rotation_blocks(
        &self,
        semantics: &Semantics,
    ) -> Result<[UnitaryGate; 3], PipelineError> {
        match semantics {
            Semantics::Ideal { scale } => {
                let angles = ideal_rotation_angles(&self.decomposition, *scale, self.digit_position)?;
                let lambda5 = gell_mann(GellMannLabel::Lambda5);
                Ok([
                    exp_generator(&lambda5, -angles[0]),
                    exp_generator(&lambda5, -angles[1]),
                    exp_generator(&lambda5, -angles[2]),
                ])
            }
            Semantics::DigitSelect(params) => Ok(Self::digit_select_blocks(params)),
        }
    }

    fn digit_select_blocks(params: &RotationParams) -> [UnitaryGate; 3] {
        let [r1, r2, r3] = params.angles();
        match params.form {
            RotationForm::One => [
                exp_generator(&gell_mann(GellMannLabel::Lambda2), r1 / 3.0),
                exp_generator(&gell_mann(GellMannLabel::Lambda5), r2 / 3.0),
                exp_generator(&gell_mann(GellMannLabel::Lambda7), r3 / 3.0),
            ],
            RotationForm::Two => {
                let lambda5 = gell_mann(GellMannLabel::Lambda5);
                [
                    exp_generator(&lambda5, r1 / 3.0),
                    exp_generator(&lambda5, r2 / 3.0),
                    exp_generator(&lambda5, r3 / 3.0),
                ]
            }
        }
    }

    pub(crate) fn execute(
        &self,
        blocks: &[UnitaryGate; 3],
        keep_intermediates: bool,
    ) -> Result<RunResult, PipelineError> {
        let controlled_rotation = controlled_select(blocks, 3)?;

        let mut state = self.initial.clone();
        state = state.apply_unitary(&self.hadamard, &[CLOCK_WIRE])?;
        state = state.apply_unitary(&self.controlled_phase, &[CLOCK_WIRE, DATA_WIRE])?;
        state = state.apply_unitary(&self.hadamard_adjoint, &[CLOCK_WIRE])?;
        let after_phase_estimation = keep_intermediates.then(|| state.clone());

        state = state.apply_unitary(&controlled_rotation, &[CLOCK_WIRE, ANCILLA_WIRE])?;
        let after_rotation = keep_intermediates.then(|| state.clone());

        state = state.apply_unitary(&self.hadamard, &[CLOCK_WIRE])?;
        state = state.apply_unitary(&self.controlled_phase_adjoint, &[CLOCK_WIRE, DATA_WIRE])?;
        state = state.apply_unitary(&self.hadamard_adjoint, &[CLOCK_WIRE])?;
        let after_uncompute = keep_intermediates.then(|| state.clone());

        let selected = state
            .postselect(ANCILLA_WIRE, SUCCESS_DIGIT)
            .map_err(|err| match err {
                StateError::PostSelectionImpossible { probability } => {
                    PipelineError::PostSelectionImpossible { probability }
                }
                other => PipelineError::State(other),
            })?;
        let conditional = selected.conditional_state;

        let clock_probabilities = conditional.wire_probabilities(CLOCK_WIRE)?;
        let clock_residual = (1.0 - clock_probabilities[0]).max(0.0);

        let layout = conditional.layout().clone();
        let data_amplitudes: Vec<Complex64> = (0..3)
            .map(|d| {
                conditional.amplitude(
                    layout
                        .index_of(&[0, d, SUCCESS_DIGIT])
                        .expect("digits in range"),
                )
            })
            .collect();
        let (solution_state, _) =
            StateVector::from_amplitudes(WireLayout::qutrits(1), &data_amplitudes)?;

        let oracle_fidelity = Some(solution_state.fidelity(&self.oracle_state)?);

        Ok(RunResult {
            solution_state,
            success_probability: selected.probability,
            clock_residual,
            oracle_fidelity,
            intermediates: match (after_phase_estimation, after_rotation, after_uncompute) {
                (Some(a), Some(b), Some(c)) => Some(Intermediates {
                    after_phase_estimation: a,
                    after_rotation: b,
                    after_uncompute: c,
                }),
                _ => None,
            },
        })
    }
}

/// Runs the full circuit on one problem instance.
pub fn run(problem: &SLEProblem, config: &PipelineConfig) -> Result<RunResult, PipelineError> {
    let compiled = CompiledCircuit::compile(problem, config.digit_position)?;
    let blocks = compiled.rotation_blocks(&config.semantics)?;
    compiled.execute(&blocks, config.keep_intermediates)
}
