//! Qutrit state-vector simulation and a solver for three-variable Hermitian
//! linear systems.
//!
//! The solver circuit runs on three qutrits: a clock wire estimates a single
//! ternary digit of each eigenvalue of the system matrix, a digit-selected
//! rotation writes inverse-eigenvalue amplitudes onto an ancilla, the clock
//! is uncomputed, and post-selecting the ancilla on |2⟩ leaves the
//! normalized solution on the data wire. A classical elimination solver acts
//! as the reference answer, and a scan engine maps the fidelity landscape
//! over the free rotation angles.
//!
//! Everything is deterministic; the only sampling entry point is the seeded
//! [`state::StateVector::sample_wire`]. Scans run in parallel by default
//! (`parallel` feature) and assemble results by grid index, so output is
//! bit-identical across runs, thread counts, and the sequential fallback.

mod cmatrix;
pub mod gates;
pub mod pipeline;
pub mod scan;
pub mod spectral;
pub mod state;

#[cfg(test)]
pub(crate) mod testdata;

pub use gates::{
    controlled_power, controlled_select, exp_generator, gell_mann, phase_unitary,
    qutrit_hadamard, rotation_gate, GateError, GellMannGenerator, GellMannLabel, RotationForm,
    RotationParams, UnitaryGate,
};
pub use pipeline::{
    analytic_success_probability, ideal_rotation_angles, run, PipelineConfig, PipelineError,
    RunResult, Semantics,
};
pub use scan::{scan, scan_sequential, RotationAxis, ScanAxis, ScanGrid, ScanSpec};
#[cfg(feature = "parallel")]
pub use scan::scan_parallel;
pub use spectral::{
    beta_coefficients, classical_solution, discriminating_position, eigh, ternary_digits,
    HermitianMatrix, SLEProblem, SpectralDecomposition, SpectralError,
};
pub use state::{PostSelection, StateError, StateVector, WireLayout};
