//! Dense state vectors over mixed-radix wire layouts, with unitary gate
//! application, post-selection, fidelity, and per-wire marginals.
//!
//! Wire 0 is the most significant in index order, so the basis index of a
//! digit tuple (d0, ..., dk-1) is Σ d_w · (product of radices of wires > w)
//! and the printed amplitude list reads like mixed-radix counting.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::gates::UnitaryGate;

/// Probability below which a post-selection outcome counts as impossible
/// rather than round-off.
pub const POSTSELECT_FLOOR: f64 = 1e-15;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("layout must have at least one wire")]
    EmptyLayout,
    #[error("wire {wire} has radix {radix}; every radix must be at least 2")]
    BadRadix { wire: usize, radix: usize },
    #[error("expected {expected} digits, got {got}")]
    DigitCount { expected: usize, got: usize },
    #[error("digit {digit} out of range on wire {wire} (radix {radix})")]
    DigitOutOfRange {
        wire: usize,
        digit: usize,
        radix: usize,
    },
    #[error("expected {expected} amplitudes, got {got}")]
    AmplitudeCount { expected: usize, got: usize },
    #[error("cannot normalize a zero vector")]
    ZeroNorm,
    #[error("gate dimension {gate} does not match the {wires}-dimensional wire subspace")]
    GateDimension { gate: usize, wires: usize },
    #[error("wire {wire} repeated in gate application")]
    RepeatedWire { wire: usize },
    #[error("wire {wire} out of range for a {wires}-wire layout")]
    WireOutOfRange { wire: usize, wires: usize },
    #[error("states have different wire layouts")]
    LayoutMismatch,
    #[error("post-selection impossible: outcome probability {probability:.3e}")]
    PostSelectionImpossible { probability: f64 },
}

/// Radices of the wires, wire 0 most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireLayout {
    radices: Vec<usize>,
}

impl WireLayout {
    pub fn new(radices: Vec<usize>) -> Result<Self, StateError> {
        if radices.is_empty() {
            return Err(StateError::EmptyLayout);
        }
        for (wire, &radix) in radices.iter().enumerate() {
            if radix < 2 {
                return Err(StateError::BadRadix { wire, radix });
            }
        }
        Ok(Self { radices })
    }

    /// A homogeneous three-level layout. `count` must be at least 1.
    pub fn qutrits(count: usize) -> Self {
        Self::new(vec![3; count]).expect("qutrit layout is valid for count >= 1")
    }

    pub fn wire_count(&self) -> usize {
        self.radices.len()
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn radix(&self, wire: usize) -> usize {
        self.radices[wire]
    }

    pub fn dimension(&self) -> usize {
        self.radices.iter().product()
    }

    /// Index weight of a wire: the product of the radices of all wires after
    /// it.
    pub fn stride(&self, wire: usize) -> usize {
        self.radices[wire + 1..].iter().product()
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize, StateError> {
        if digits.len() != self.wire_count() {
            return Err(StateError::DigitCount {
                expected: self.wire_count(),
                got: digits.len(),
            });
        }
        let mut index = 0;
        for (wire, (&digit, &radix)) in digits.iter().zip(self.radices.iter()).enumerate() {
            if digit >= radix {
                return Err(StateError::DigitOutOfRange { wire, digit, radix });
            }
            index += digit * self.stride(wire);
        }
        Ok(index)
    }

    pub fn digit_at(&self, index: usize, wire: usize) -> usize {
        (index / self.stride(wire)) % self.radices[wire]
    }
}

/// A unit-norm complex amplitude vector over a wire layout.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: WireLayout,
    amplitudes: Vec<Complex64>,
}

/// Outcome of conditioning on one wire digit: the outcome probability and
/// the renormalized conditional state.
#[derive(Debug, Clone)]
pub struct PostSelection {
    pub probability: f64,
    pub conditional_state: StateVector,
}

impl StateVector {
    /// The computational basis state for the given digit tuple.
    pub fn basis_state(layout: WireLayout, digits: &[usize]) -> Result<Self, StateError> {
        let index = layout.index_of(digits)?;
        let mut amplitudes = vec![Complex64::ZERO; layout.dimension()];
        amplitudes[index] = Complex64::ONE;
        Ok(Self { layout, amplitudes })
    }

    /// Normalizes the given amplitudes; the second return value is the norm
    /// they had before normalization.
    pub fn from_amplitudes(
        layout: WireLayout,
        amplitudes: &[Complex64],
    ) -> Result<(Self, f64), StateError> {
        if amplitudes.len() != layout.dimension() {
            return Err(StateError::AmplitudeCount {
                expected: layout.dimension(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm <= 0.0 {
            return Err(StateError::ZeroNorm);
        }
        let normalized = amplitudes.iter().map(|z| z / norm).collect();
        Ok((
            Self {
                layout,
                amplitudes: normalized,
            },
            norm,
        ))
    }

    pub fn layout(&self) -> &WireLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64, StateError> {
        if self.layout != other.layout {
            return Err(StateError::LayoutMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Pure-state fidelity `|⟨self|other⟩|²`, invariant under global phases.
    pub fn fidelity(&self, other: &Self) -> Result<f64, StateError> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    /// Applies `gate` to the named wires (identity on all others) and returns
    /// the new state. The gate's basis orders the named wires as given, first
    /// wire most significant.
    pub fn apply_unitary(&self, gate: &UnitaryGate, wires: &[usize]) -> Result<Self, StateError> {
        let wire_count = self.layout.wire_count();
        for (k, &wire) in wires.iter().enumerate() {
            if wire >= wire_count {
                return Err(StateError::WireOutOfRange {
                    wire,
                    wires: wire_count,
                });
            }
            if wires[..k].contains(&wire) {
                return Err(StateError::RepeatedWire { wire });
            }
        }
        let sub_dimension: usize = wires.iter().map(|&w| self.layout.radix(w)).product();
        if gate.dimension() != sub_dimension {
            return Err(StateError::GateDimension {
                gate: gate.dimension(),
                wires: sub_dimension,
            });
        }

        // offset of each gate-basis index inside the full index space
        let mut offsets = vec![0usize; sub_dimension];
        for (g, offset) in offsets.iter_mut().enumerate() {
            let mut rem = g;
            for (k, &wire) in wires.iter().enumerate() {
                let weight: usize = wires[k + 1..]
                    .iter()
                    .map(|&w| self.layout.radix(w))
                    .product();
                let digit = rem / weight;
                rem %= weight;
                *offset += digit * self.layout.stride(wire);
            }
        }

        let mut output = self.amplitudes.clone();
        let mut gathered = vec![Complex64::ZERO; sub_dimension];
        for base in 0..self.layout.dimension() {
            if wires.iter().any(|&w| self.layout.digit_at(base, w) != 0) {
                continue;
            }
            for (g, &offset) in offsets.iter().enumerate() {
                gathered[g] = self.amplitudes[base + offset];
            }
            for (r, &offset) in offsets.iter().enumerate() {
                let mut acc = Complex64::ZERO;
                for (s, &input) in gathered.iter().enumerate() {
                    acc += gate.entry(r, s) * input;
                }
                output[base + offset] = acc;
            }
        }
        Ok(Self {
            layout: self.layout.clone(),
            amplitudes: output,
        })
    }

    /// Conditions on `wire` reading `digit`. Fails when the outcome
    /// probability is below [`POSTSELECT_FLOOR`].
    pub fn postselect(&self, wire: usize, digit: usize) -> Result<PostSelection, StateError> {
        self.check_wire(wire)?;
        let radix = self.layout.radix(wire);
        if digit >= radix {
            return Err(StateError::DigitOutOfRange { wire, digit, radix });
        }
        let probability: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.layout.digit_at(*i, wire) == digit)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        if probability < POSTSELECT_FLOOR {
            return Err(StateError::PostSelectionImpossible { probability });
        }
        let scale = 1.0 / probability.sqrt();
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, z)| {
                if self.layout.digit_at(i, wire) == digit {
                    z * scale
                } else {
                    Complex64::ZERO
                }
            })
            .collect();
        Ok(PostSelection {
            probability,
            conditional_state: Self {
                layout: self.layout.clone(),
                amplitudes,
            },
        })
    }

    /// Marginal outcome probabilities of one wire.
    pub fn wire_probabilities(&self, wire: usize) -> Result<Vec<f64>, StateError> {
        self.check_wire(wire)?;
        let mut probabilities = vec![0.0; self.layout.radix(wire)];
        for (i, z) in self.amplitudes.iter().enumerate() {
            probabilities[self.layout.digit_at(i, wire)] += z.norm_sqr();
        }
        Ok(probabilities)
    }

    /// Demonstration mode: samples one measurement outcome of `wire` from a
    /// seeded generator and collapses onto it. All library results elsewhere
    /// are deterministic; this is the only sampling entry point.
    pub fn sample_wire(&self, wire: usize, seed: u64) -> Result<(usize, StateVector), StateError> {
        let probabilities = self.wire_probabilities(wire)?;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let draw: f64 = rng.random();
        let mut cumulative = 0.0;
        let mut outcome = None;
        for (digit, &p) in probabilities.iter().enumerate() {
            if p < POSTSELECT_FLOOR {
                continue;
            }
            cumulative += p;
            outcome = Some(digit);
            if draw < cumulative {
                break;
            }
        }
        let digit = outcome.expect("a unit-norm state has at least one reachable outcome");
        let selected = self.postselect(wire, digit)?;
        Ok((digit, selected.conditional_state))
    }

    fn check_wire(&self, wire: usize) -> Result<(), StateError> {
        if wire >= self.layout.wire_count() {
            return Err(StateError::WireOutOfRange {
                wire,
                wires: self.layout.wire_count(),
            });
        }
        Ok(())
    }
}
