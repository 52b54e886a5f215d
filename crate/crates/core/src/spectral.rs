//! Classical linear algebra for small dense Hermitian systems: validated
//! matrix types, a cyclic Jacobi eigensolver, a direct elimination solver used
//! as the reference answer, and ternary digit analysis of eigenvalues.

use num_complex::Complex64;
use thiserror::Error;

use crate::cmatrix;

/// Largest tolerated `max |M - M†|` when constructing a [`HermitianMatrix`].
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Jacobi sweep convergence threshold on the off-diagonal Frobenius norm.
const JACOBI_OFFDIAG_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Relative pivot threshold below which elimination reports a singular matrix.
const SINGULAR_PIVOT_REL: f64 = 1e-12;

/// Largest digit count for which `x * 3^count` stays exactly representable.
const MAX_TERNARY_DIGITS: usize = 32;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("{got} entries do not form a {dimension}x{dimension} matrix")]
    BadShape { dimension: usize, got: usize },
    #[error("right-hand side length {got} does not match matrix dimension {expected}")]
    RhsLength { expected: usize, got: usize },
    #[error("right-hand side must be nonzero")]
    ZeroRhs,
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("value {value} outside [0, 1)")]
    DigitDomain { value: f64 },
    #[error("digit count must be between 1 and {MAX_TERNARY_DIGITS}, got {count}")]
    BadDigitCount { count: usize },
    #[error("no digit position <= {max_digits} gives pairwise distinct digits")]
    NoDiscriminatingDigit { max_digits: usize },
}

/// Dense complex matrix validated to be Hermitian within [`HERMITICITY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dimension: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(dimension: usize, entries: Vec<Complex64>) -> Result<Self, SpectralError> {
        if entries.len() != dimension * dimension {
            return Err(SpectralError::BadShape {
                dimension,
                got: entries.len(),
            });
        }
        let deviation = cmatrix::hermiticity_deviation(&entries, dimension);
        if deviation >= HERMITICITY_TOL {
            return Err(SpectralError::NotHermitian { deviation });
        }
        Ok(Self { dimension, entries })
    }

    pub fn from_real_diagonal(diagonal: &[f64]) -> Self {
        let dimension = diagonal.len();
        let mut entries = vec![Complex64::ZERO; dimension * dimension];
        for (i, &value) in diagonal.iter().enumerate() {
            entries[i * dimension + i] = Complex64::new(value, 0.0);
        }
        Self { dimension, entries }
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

    /// Sum of the diagonal, which is real for a Hermitian matrix.
    pub fn trace(&self) -> f64 {
        (0..self.dimension).map(|i| self.entry(i, i).re).sum()
    }
}

/// A linear system `A x = b` with Hermitian `A` and nonzero `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct SLEProblem {
    matrix: HermitianMatrix,
    rhs: Vec<Complex64>,
}

impl SLEProblem {
    pub fn new(matrix: HermitianMatrix, rhs: Vec<Complex64>) -> Result<Self, SpectralError> {
        if rhs.len() != matrix.dimension() {
            return Err(SpectralError::RhsLength {
                expected: matrix.dimension(),
                got: rhs.len(),
            });
        }
        let norm_sqr: f64 = rhs.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(SpectralError::ZeroRhs);
        }
        Ok(Self { matrix, rhs })
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Complex64] {
        &self.rhs
    }

    /// The right-hand side scaled to unit norm.
    pub fn normalized_rhs(&self) -> Vec<Complex64> {
        let norm: f64 = self.rhs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        self.rhs.iter().map(|z| z / norm).collect()
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
///
/// Eigenvectors are stored column-major so each eigenvector is a contiguous
/// slice.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dimension: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Complex64>,
}

impl SpectralDecomposition {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// The j-th eigenvector, matching `eigenvalues()[j]`.
    pub fn eigenvector(&self, j: usize) -> &[Complex64] {
        &self.eigenvectors[j * self.dimension..(j + 1) * self.dimension]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops below 1e-13; gives up
/// after 100 sweeps and reports the residual.
pub fn eigh(matrix: &HermitianMatrix) -> Result<SpectralDecomposition, SpectralError> {
    let n = matrix.dimension();
    let mut a = matrix.entries().to_vec();
    let mut v = cmatrix::identity(n);

    let mut residual = off_diagonal_norm(&a, n);
    let mut converged = residual < JACOBI_OFFDIAG_TOL;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate_to_zero(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&a, n);
        converged = residual < JACOBI_OFFDIAG_TOL;
    }
    if !converged {
        return Err(SpectralError::NoConvergence { sweeps, residual });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));

    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut eigenvectors = vec![Complex64::ZERO; n * n];
    for (slot, &col) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[slot * n + row] = v[row * n + col];
        }
    }
    Ok(SpectralDecomposition {
        dimension: n,
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += a[p * n + q].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing the (p, q) entry of the Hermitian working
/// matrix `a`, accumulated into the eigenvector matrix `v`.
fn rotate_to_zero(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let phase = apq / abs;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sigma = phase * s;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * sigma.conj();
        a[k * n + q] = akp * sigma + akq * c;
        a[p * n + k] = a[k * n + p].conj();
        a[q * n + k] = a[k * n + q].conj();
    }
    let shift = 2.0 * c * s * abs;
    a[p * n + p] = Complex64::new(c * c * app + s * s * aqq - shift, 0.0);
    a[q * n + q] = Complex64::new(s * s * app + c * c * aqq + shift, 0.0);
    a[p * n + q] = Complex64::ZERO;
    a[q * n + p] = Complex64::ZERO;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c - vkq * sigma.conj();
        v[k * n + q] = vkp * sigma + vkq * c;
    }
}

/// The normalized solution of `A x = b` by Gaussian elimination with partial
/// pivoting.
///
/// This route never touches the eigensolver, so it stays an independent check
/// on everything built from the spectral decomposition.
pub fn classical_solution(problem: &SLEProblem) -> Result<Vec<Complex64>, SpectralError> {
    let n = problem.matrix().dimension();
    let mut a = problem.matrix().entries().to_vec();
    let mut b = problem.normalized_rhs();
    let scale = a
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r1, &r2| a[r1 * n + col].norm().total_cmp(&a[r2 * n + col].norm()))
            .unwrap();
        if a[pivot_row * n + col].norm() < SINGULAR_PIVOT_REL * scale {
            return Err(SpectralError::Singular);
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor == Complex64::ZERO {
                continue;
            }
            for k in col..n {
                let sub = factor * a[col * n + k];
                a[row * n + k] -= sub;
            }
            let pivot_rhs = b[col];
            b[row] -= factor * pivot_rhs;
        }
    }

    let mut x = vec![Complex64::ZERO; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row * n + k] * x[k];
        }
        x[row] = acc / a[row * n + row];
    }

    let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(x.iter().map(|z| z / norm).collect())
}

/// The first `count` ternary fraction digits of `x`, most significant first.
///
/// Digits come from the nearest `count`-digit ternary value, so an input that
/// sits a hair below a terminating expansion (a numerically computed 1/3,
/// say) still reads as that expansion instead of flipping into a tail of 2s.
/// Values within half a step of 1 clamp to all 2s.
pub fn ternary_digits(x: f64, count: usize) -> Result<Vec<u8>, SpectralError> {
    if count == 0 || count > MAX_TERNARY_DIGITS {
        return Err(SpectralError::BadDigitCount { count });
    }
    if !(0.0..1.0).contains(&x) {
        return Err(SpectralError::DigitDomain { value: x });
    }
    let scale = 3f64.powi(count as i32);
    let mut m = (x * scale).round() as u64;
    if m as f64 >= scale {
        m = scale as u64 - 1;
    }
    let mut reversed = Vec::with_capacity(count);
    for _ in 0..count {
        reversed.push((m % 3) as u8);
        m /= 3;
    }
    reversed.reverse();
    Ok(reversed)
}

/// The smallest digit position (1-based) at which the ternary digits of all
/// values are pairwise distinct.
pub fn discriminating_position(values: &[f64], max_digits: usize) -> Result<usize, SpectralError> {
    let rows: Vec<Vec<u8>> = values
        .iter()
        .map(|&v| ternary_digits(v, max_digits))
        .collect::<Result<_, _>>()?;
    for position in 1..=max_digits {
        let mut digits: Vec<u8> = rows.iter().map(|row| row[position - 1]).collect();
        digits.sort_unstable();
        if digits.windows(2).all(|w| w[0] != w[1]) {
            return Ok(position);
        }
    }
    Err(SpectralError::NoDiscriminatingDigit { max_digits })
}

/// Expansion coefficients of a unit vector in the eigenbasis: `β_j = ⟨u_j|b⟩`.
pub fn beta_coefficients(
    decomposition: &SpectralDecomposition,
    b_normalized: &[Complex64],
) -> Vec<Complex64> {
    (0..decomposition.dimension())
        .map(|j| {
            decomposition
                .eigenvector(j)
                .iter()
                .zip(b_normalized.iter())
                .map(|(u, b)| u.conj() * b)
                .sum()
        })
        .collect()
}
