//! Constructors for every unitary in the solver circuit: the qutrit Hadamard,
//! rotations generated by the imaginary-antisymmetric Gell-Mann matrices, the
//! phase-estimation unitary, and control-indexed block gates.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::cmatrix;
use crate::spectral::{eigh, HermitianMatrix, SpectralError};

/// Largest tolerated `max |U U† - I|` for a validated gate.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum GateError {
    #[error("matrix is not unitary: max |UU† - I| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },
    #[error("{got} entries do not form a {dimension}x{dimension} matrix")]
    BadShape { dimension: usize, got: usize },
    #[error("control radix must be at least 2, got {radix}")]
    BadControlRadix { radix: usize },
    #[error("expected {expected} block gates, got {got}")]
    BlockCount { expected: usize, got: usize },
    #[error("block gates must all share one dimension")]
    BlockDimensions,
    #[error("digit position must be at least 1")]
    ZeroDigitPosition,
    #[error("l-value {value} outside [-1, 1]")]
    LOutOfRange { value: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Dense square complex matrix validated to be unitary within
/// [`UNITARITY_TOL`]. Stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGate {
    dimension: usize,
    entries: Vec<Complex64>,
}

impl UnitaryGate {
    pub fn new(dimension: usize, entries: Vec<Complex64>) -> Result<Self, GateError> {
        if entries.len() != dimension * dimension {
            return Err(GateError::BadShape {
                dimension,
                got: entries.len(),
            });
        }
        let deviation = cmatrix::unitarity_deviation(&entries, dimension);
        if deviation >= UNITARITY_TOL {
            return Err(GateError::NotUnitary { deviation });
        }
        Ok(Self { dimension, entries })
    }

    /// Constructor for matrices unitary by construction; only checked in
    /// debug builds.
    fn from_parts(dimension: usize, entries: Vec<Complex64>) -> Self {
        debug_assert!(
            cmatrix::unitarity_deviation(&entries, dimension) < UNITARITY_TOL,
            "internal gate construction lost unitarity"
        );
        Self { dimension, entries }
    }

    pub fn identity(dimension: usize) -> Self {
        Self::from_parts(dimension, cmatrix::identity(dimension))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dimension + col]
    }

    /// Conjugate transpose. Exact: no arithmetic beyond conjugation.
    pub fn adjoint(&self) -> Self {
        Self::from_parts(self.dimension, cmatrix::adjoint(&self.entries, self.dimension))
    }

    /// Matrix product `self · rhs`. Panics if dimensions differ.
    pub fn matmul(&self, rhs: &UnitaryGate) -> Self {
        assert_eq!(self.dimension, rhs.dimension, "gate dimension mismatch");
        Self::from_parts(
            self.dimension,
            cmatrix::matmul(&self.entries, &rhs.entries, self.dimension),
        )
    }

    /// max |(U U† - I)_{ij}|; zero for an exactly unitary matrix.
    pub fn unitarity_deviation(&self) -> f64 {
        cmatrix::unitarity_deviation(&self.entries, self.dimension)
    }
}

/// The three imaginary-antisymmetric Gell-Mann matrices, indexed by their
/// conventional numbering. Each one generates rotations in a single
/// two-level plane of the qutrit: λ2 in (0,1), λ5 in (0,2), λ7 in (1,2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GellMannLabel {
    Lambda2,
    Lambda5,
    Lambda7,
}

/// A 3x3 traceless Hermitian rotation generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GellMannGenerator {
    label: GellMannLabel,
    entries: [Complex64; 9],
}

impl GellMannGenerator {
    pub fn label(&self) -> GellMannLabel {
        self.label
    }

    pub fn entries(&self) -> &[Complex64; 9] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * 3 + col]
    }
}

pub fn gell_mann(label: GellMannLabel) -> GellMannGenerator {
    let i = Complex64::I;
    let mut entries = [Complex64::ZERO; 9];
    let (row, col) = match label {
        GellMannLabel::Lambda2 => (0, 1),
        GellMannLabel::Lambda5 => (0, 2),
        GellMannLabel::Lambda7 => (1, 2),
    };
    entries[row * 3 + col] = -i;
    entries[col * 3 + row] = i;
    GellMannGenerator { label, entries }
}

/// The qutrit Hadamard: entry (k, j) = ω^{jk} / √3 with ω = e^{2πi/3}.
///
/// The 1/√3 factor makes it unitary; for three levels this is exactly the
/// discrete Fourier transform.
pub fn qutrit_hadamard() -> UnitaryGate {
    let norm = 1.0 / 3f64.sqrt();
    let mut entries = vec![Complex64::ZERO; 9];
    for k in 0..3 {
        for j in 0..3 {
            let phase = 2.0 * PI * ((j * k) % 3) as f64 / 3.0;
            entries[k * 3 + j] = Complex64::from_polar(norm, phase);
        }
    }
    UnitaryGate::from_parts(3, entries)
}

/// `exp(i · angle · g)` by eigendecomposition of the Hermitian generator.
pub fn exp_generator(generator: &GellMannGenerator, angle: f64) -> UnitaryGate {
    let matrix = HermitianMatrix::new(3, generator.entries().to_vec())
        .expect("Gell-Mann generators are Hermitian");
    exp_hermitian_scaled(&matrix, angle)
}

/// `exp(i · factor · m)` for Hermitian `m`.
fn exp_hermitian_scaled(matrix: &HermitianMatrix, factor: f64) -> UnitaryGate {
    let decomposition = eigh(matrix).expect("small Hermitian eigendecomposition converges");
    let n = matrix.dimension();
    let mut entries = vec![Complex64::ZERO; n * n];
    for j in 0..n {
        let phase = Complex64::from_polar(1.0, factor * decomposition.eigenvalues()[j]);
        let u = decomposition.eigenvector(j);
        for r in 0..n {
            let scaled = phase * u[r];
            for s in 0..n {
                entries[r * n + s] += scaled * u[s].conj();
            }
        }
    }
    UnitaryGate::from_parts(n, entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationForm {
    /// Three factors with distinct generators: λ2, λ5, λ7.
    One,
    /// Three commuting factors, all generated by λ5.
    Two,
}

/// Angles for the three-factor rotation gate, with an optional record of the
/// l-values they were derived from via `r = -2·arccos(l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationParams {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub form: RotationForm,
    l_values: Option<[f64; 3]>,
}

impl RotationParams {
    pub fn new(r1: f64, r2: f64, r3: f64, form: RotationForm) -> Self {
        Self {
            r1,
            r2,
            r3,
            form,
            l_values: None,
        }
    }

    /// Converts l-values in [-1, 1] to angles via `r_i = -2·arccos(l_i)`.
    pub fn from_l_values(l1: f64, l2: f64, l3: f64, form: RotationForm) -> Result<Self, GateError> {
        for value in [l1, l2, l3] {
            if !(-1.0..=1.0).contains(&value) {
                return Err(GateError::LOutOfRange { value });
            }
        }
        Ok(Self {
            r1: -2.0 * l1.acos(),
            r2: -2.0 * l2.acos(),
            r3: -2.0 * l3.acos(),
            form,
            l_values: Some([l1, l2, l3]),
        })
    }

    pub fn l_values(&self) -> Option<[f64; 3]> {
        self.l_values
    }

    pub fn angles(&self) -> [f64; 3] {
        [self.r1, self.r2, self.r3]
    }
}

/// The composite rotation `R = R1 · R2 · R3`.
///
/// Form one multiplies `exp(i r1 λ2/3) · exp(i r2 λ5/3) · exp(i r3 λ7/3)`;
/// form two uses λ5 throughout, so the factors commute and the product
/// collapses to `exp(i (r1+r2+r3) λ5/3)`.
pub fn rotation_gate(params: &RotationParams) -> UnitaryGate {
    match params.form {
        RotationForm::One => {
            let r1 = exp_generator(&gell_mann(GellMannLabel::Lambda2), params.r1 / 3.0);
            let r2 = exp_generator(&gell_mann(GellMannLabel::Lambda5), params.r2 / 3.0);
            let r3 = exp_generator(&gell_mann(GellMannLabel::Lambda7), params.r3 / 3.0);
            r1.matmul(&r2).matmul(&r3)
        }
        RotationForm::Two => exp_generator(
            &gell_mann(GellMannLabel::Lambda5),
            (params.r1 + params.r2 + params.r3) / 3.0,
        ),
    }
}

/// The phase-estimation unitary `exp(2πi · 3^(n-1) · A)`.
///
/// With `n` the ternary digit position to estimate, each eigenvector of `A`
/// picks up the phase `2π · 3^(n-1) · λ`, so a terminating eigenvalue leaves
/// exactly its n-th digit in the clock after the inverse Hadamard.
pub fn phase_unitary(matrix: &HermitianMatrix, digit_position: u32) -> Result<UnitaryGate, GateError> {
    if digit_position == 0 {
        return Err(GateError::ZeroDigitPosition);
    }
    let factor = 2.0 * PI * 3f64.powi(digit_position as i32 - 1);
    Ok(exp_hermitian_scaled(matrix, factor))
}

/// The control-indexed power gate `|c⟩|t⟩ → |c⟩ U^c |t⟩`, block diagonal with
/// blocks `U^0, U^1, ..., U^(radix-1)`.
pub fn controlled_power(gate: &UnitaryGate, control_radix: usize) -> Result<UnitaryGate, GateError> {
    if control_radix < 2 {
        return Err(GateError::BadControlRadix {
            radix: control_radix,
        });
    }
    let m = gate.dimension();
    let mut blocks = Vec::with_capacity(control_radix);
    let mut power = UnitaryGate::identity(m);
    for _ in 0..control_radix {
        blocks.push(power.clone());
        power = power.matmul(gate);
    }
    controlled_select(&blocks, control_radix)
}

/// The control-indexed selection gate `|c⟩|t⟩ → |c⟩ gates[c] |t⟩`.
pub fn controlled_select(
    gates: &[UnitaryGate],
    control_radix: usize,
) -> Result<UnitaryGate, GateError> {
    if control_radix < 2 {
        return Err(GateError::BadControlRadix {
            radix: control_radix,
        });
    }
    if gates.len() != control_radix {
        return Err(GateError::BlockCount {
            expected: control_radix,
            got: gates.len(),
        });
    }
    let m = gates[0].dimension();
    if gates.iter().any(|g| g.dimension() != m) {
        return Err(GateError::BlockDimensions);
    }
    let dim = control_radix * m;
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for (c, block) in gates.iter().enumerate() {
        for r in 0..m {
            for s in 0..m {
                entries[(c * m + r) * dim + (c * m + s)] = block.entry(r, s);
            }
        }
    }
    Ok(UnitaryGate::from_parts(dim, entries))
}
