//! Fidelity-landscape scans over two rotation parameters with the third held
//! fixed. Grid points are independent, so the scan is data-parallel by
//! default (`parallel` feature, on by default) with a sequential fallback;
//! either path assembles the grid by index, never by completion order, so
//! results are bit-identical across runs and across the two paths.

use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::gates::{RotationForm, RotationParams};
use crate::pipeline::{CompiledCircuit, PipelineError, Semantics};
use crate::spectral::SLEProblem;

/// One of the three rotation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationAxis {
    R1,
    R2,
    R3,
}

impl RotationAxis {
    pub const ALL: [RotationAxis; 3] = [RotationAxis::R1, RotationAxis::R2, RotationAxis::R3];

    pub fn name(self) -> &'static str {
        match self {
            RotationAxis::R1 => "r1",
            RotationAxis::R2 => "r2",
            RotationAxis::R3 => "r3",
        }
    }

    fn index(self) -> usize {
        match self {
            RotationAxis::R1 => 0,
            RotationAxis::R2 => 1,
            RotationAxis::R3 => 2,
        }
    }
}

impl FromStr for RotationAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r1" => Ok(RotationAxis::R1),
            "r2" => Ok(RotationAxis::R2),
            "r3" => Ok(RotationAxis::R3),
            other => Err(format!("unknown rotation parameter '{other}'")),
        }
    }
}

/// A scanned parameter range: `points` evenly spaced values from `min` to
/// `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanAxis {
    pub param: RotationAxis,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl ScanAxis {
    pub fn values(&self) -> Vec<f64> {
        let span = self.max - self.min;
        (0..self.points)
            .map(|i| self.min + span * i as f64 / (self.points - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub axis1: ScanAxis,
    pub axis2: ScanAxis,
    /// Value of the one parameter not named by the axes.
    pub fixed_value: f64,
    pub form: RotationForm,
    pub digit_position: u32,
}

impl ScanSpec {
    /// The parameter held fixed: the one not covered by the two axes.
    pub fn fixed_param(&self) -> RotationAxis {
        RotationAxis::ALL
            .into_iter()
            .find(|axis| *axis != self.axis1.param && *axis != self.axis2.param)
            .expect("two distinct axes leave exactly one parameter fixed")
    }

    fn validate(&self) -> Result<(), PipelineError> {
        if self.axis1.param == self.axis2.param {
            return Err(PipelineError::InvalidScan {
                reason: format!("both axes scan {}", self.axis1.param.name()),
            });
        }
        for axis in [&self.axis1, &self.axis2] {
            if axis.points < 2 {
                return Err(PipelineError::InvalidScan {
                    reason: format!(
                        "axis {} needs at least 2 points, got {}",
                        axis.param.name(),
                        axis.points
                    ),
                });
            }
            if axis.min >= axis.max {
                return Err(PipelineError::InvalidScan {
                    reason: format!(
                        "axis {} range is empty: min {} max {}",
                        axis.param.name(),
                        axis.min,
                        axis.max
                    ),
                });
            }
        }
        Ok(())
    }

    fn rotation(&self, value1: f64, value2: f64) -> RotationParams {
        let mut angles = [0.0f64; 3];
        angles[self.axis1.param.index()] = value1;
        angles[self.axis2.param.index()] = value2;
        angles[self.fixed_param().index()] = self.fixed_value;
        RotationParams::new(angles[0], angles[1], angles[2], self.form)
    }
}

/// A completed scan: axis values, the fidelity at every grid point, and the
/// arg-max cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub axes: (RotationAxis, RotationAxis),
    pub axis1_values: Vec<f64>,
    pub axis2_values: Vec<f64>,
    /// `fidelities[i][j]` is the fidelity at `(axis1_values[i],
    /// axis2_values[j])`; grid points where post-selection is impossible
    /// hold 0.
    pub fidelities: Vec<Vec<f64>>,
    /// Row, column of the maximum; ties break to the smallest row index,
    /// then the smallest column index.
    pub best: (usize, usize),
}

impl ScanGrid {
    pub fn best_fidelity(&self) -> f64 {
        self.fidelities[self.best.0][self.best.1]
    }

    pub fn best_values(&self) -> (f64, f64) {
        (self.axis1_values[self.best.0], self.axis2_values[self.best.1])
    }
}

/// Scans the grid, evaluating points in parallel when the `parallel` feature
/// is enabled.
pub fn scan(problem: &SLEProblem, spec: &ScanSpec) -> Result<ScanGrid, PipelineError> {
    #[cfg(feature = "parallel")]
    {
        scan_parallel(problem, spec)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan_sequential(problem, spec)
    }
}

/// Single-threaded scan; always available.
pub fn scan_sequential(problem: &SLEProblem, spec: &ScanSpec) -> Result<ScanGrid, PipelineError> {
    spec.validate()?;
    let compiled = CompiledCircuit::compile(problem, spec.digit_position)?;
    let axis1_values = spec.axis1.values();
    let axis2_values = spec.axis2.values();
    let fidelities = axis1_values
        .iter()
        .map(|&value1| {
            axis2_values
                .iter()
                .map(|&value2| evaluate_point(&compiled, spec, value1, value2))
                .collect::<Result<Vec<f64>, PipelineError>>()
        })
        .collect::<Result<Vec<Vec<f64>>, PipelineError>>()?;
    Ok(assemble(spec, axis1_values, axis2_values, fidelities))
}

/// Data-parallel scan over grid rows.
#[cfg(feature = "parallel")]
pub fn scan_parallel(problem: &SLEProblem, spec: &ScanSpec) -> Result<ScanGrid, PipelineError> {
    spec.validate()?;
    let compiled = CompiledCircuit::compile(problem, spec.digit_position)?;
    let axis1_values = spec.axis1.values();
    let axis2_values = spec.axis2.values();
    let fidelities = axis1_values
        .par_iter()
        .map(|&value1| {
            axis2_values
                .iter()
                .map(|&value2| evaluate_point(&compiled, spec, value1, value2))
                .collect::<Result<Vec<f64>, PipelineError>>()
        })
        .collect::<Result<Vec<Vec<f64>>, PipelineError>>()?;
    Ok(assemble(spec, axis1_values, axis2_values, fidelities))
}

fn evaluate_point(
    compiled: &CompiledCircuit,
    spec: &ScanSpec,
    value1: f64,
    value2: f64,
) -> Result<f64, PipelineError> {
    let params = spec.rotation(value1, value2);
    let blocks = compiled.rotation_blocks(&Semantics::DigitSelect(params))?;
    match compiled.execute(&blocks, false) {
        Ok(result) => Ok(result
            .oracle_fidelity
            .expect("executed runs always carry an oracle fidelity")),
        Err(PipelineError::PostSelectionImpossible { .. }) => Ok(0.0),
        Err(other) => Err(other),
    }
}

fn assemble(
    spec: &ScanSpec,
    axis1_values: Vec<f64>,
    axis2_values: Vec<f64>,
    fidelities: Vec<Vec<f64>>,
) -> ScanGrid {
    let mut best = (0usize, 0usize);
    let mut best_value = f64::NEG_INFINITY;
    for (i, row) in fidelities.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            if value > best_value {
                best_value = value;
                best = (i, j);
            }
        }
    }
    ScanGrid {
        axes: (spec.axis1.param, spec.axis2.param),
        axis1_values,
        axis2_values,
        fidelities,
        best,
    }
}
