//! The on-disk problem format: a JSON document with a 3x3 `matrix` and a
//! 3-entry `b`, complex numbers written as two-element `[re, im]` arrays.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use qutrit_sle::{HermitianMatrix, SLEProblem, SpectralError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Accepted hermiticity slack for file input; the matrix is symmetrized to
/// `(M + M†)/2` before use, which leaves an exactly Hermitian input
/// untouched.
pub const FILE_HERMITICITY_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum ProblemFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("field 'matrix': expected 3 rows, got {got}")]
    MatrixRows { got: usize },
    #[error("field 'matrix': row {row} has {got} entries, expected 3")]
    MatrixRow { row: usize, got: usize },
    #[error("field 'matrix': not Hermitian within {FILE_HERMITICITY_TOL:e} (max |M - M†| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("field 'b': expected 3 entries, got {got}")]
    RhsLength { got: usize },
    #[error("field 'b': {source}")]
    Rhs { source: SpectralError },
    #[error("field 'matrix': {source}")]
    Matrix { source: SpectralError },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub b: Vec<[f64; 2]>,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<SLEProblem, ProblemFileError> {
        let text = fs::read_to_string(path).map_err(|source| ProblemFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let file: ProblemFile =
            serde_json::from_str(&text).map_err(|source| ProblemFileError::Json {
                path: path.display().to_string(),
                source,
            })?;
        file.into_problem()
    }

    pub fn into_problem(self) -> Result<SLEProblem, ProblemFileError> {
        if self.matrix.len() != 3 {
            return Err(ProblemFileError::MatrixRows {
                got: self.matrix.len(),
            });
        }
        for (row, entries) in self.matrix.iter().enumerate() {
            if entries.len() != 3 {
                return Err(ProblemFileError::MatrixRow {
                    row,
                    got: entries.len(),
                });
            }
        }
        if self.b.len() != 3 {
            return Err(ProblemFileError::RhsLength { got: self.b.len() });
        }

        let mut entries: Vec<Complex64> = self
            .matrix
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let mut deviation = 0.0f64;
        for r in 0..3 {
            for s in 0..3 {
                deviation = deviation.max((entries[r * 3 + s] - entries[s * 3 + r].conj()).norm());
            }
        }
        if deviation > FILE_HERMITICITY_TOL {
            return Err(ProblemFileError::NotHermitian { deviation });
        }
        for r in 0..3 {
            entries[r * 3 + r] = Complex64::new(entries[r * 3 + r].re, 0.0);
            for s in (r + 1)..3 {
                let mean = (entries[r * 3 + s] + entries[s * 3 + r].conj()) / 2.0;
                entries[r * 3 + s] = mean;
                entries[s * 3 + r] = mean.conj();
            }
        }
        let matrix = HermitianMatrix::new(3, entries)
            .map_err(|source| ProblemFileError::Matrix { source })?;
        let rhs: Vec<Complex64> = self
            .b
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        SLEProblem::new(matrix, rhs).map_err(|source| ProblemFileError::Rhs { source })
    }
}
