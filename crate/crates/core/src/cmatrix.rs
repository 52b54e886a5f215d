//! Small dense complex matrix helpers shared by the gate and spectral modules.
//! Matrices are stored row-major in a flat `Vec<Complex64>`.

use num_complex::Complex64;

pub(crate) fn identity(dimension: usize) -> Vec<Complex64> {
    let mut entries = vec![Complex64::ZERO; dimension * dimension];
    for i in 0..dimension {
        entries[i * dimension + i] = Complex64::ONE;
    }
    entries
}

/// `a * b` for square matrices of the given dimension.
pub(crate) fn matmul(a: &[Complex64], b: &[Complex64], dimension: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; dimension * dimension];
    for i in 0..dimension {
        for k in 0..dimension {
            let aik = a[i * dimension + k];
            if aik == Complex64::ZERO {
                continue;
            }
            for j in 0..dimension {
                out[i * dimension + j] += aik * b[k * dimension + j];
            }
        }
    }
    out
}

/// Conjugate transpose.
pub(crate) fn adjoint(a: &[Complex64], dimension: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; dimension * dimension];
    for i in 0..dimension {
        for j in 0..dimension {
            out[j * dimension + i] = a[i * dimension + j].conj();
        }
    }
    out
}

/// max |(a a† - I)_{ij}|, the unitarity defect.
pub(crate) fn unitarity_deviation(a: &[Complex64], dimension: usize) -> f64 {
    let product = matmul(a, &adjoint(a, dimension), dimension);
    let mut worst = 0.0f64;
    for i in 0..dimension {
        for j in 0..dimension {
            let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
            worst = worst.max((product[i * dimension + j] - expected).norm());
        }
    }
    worst
}

/// max |(a - a†)_{ij}|, the hermiticity defect.
pub(crate) fn hermiticity_deviation(a: &[Complex64], dimension: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dimension {
        for j in 0..dimension {
            worst = worst.max((a[i * dimension + j] - a[j * dimension + i].conj()).norm());
        }
    }
    worst
}

#[cfg(test)]
pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
