//! Shared fixtures for the unit tests: the reference 3x3 instance and
//! seeded random instance generators.

use num_complex::Complex64;

use crate::spectral::{HermitianMatrix, SLEProblem};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn reference_matrix() -> HermitianMatrix {
    HermitianMatrix::new(
        3,
        vec![
            c(0.44033, 0.0),
            c(0.05719, -0.02612),
            c(0.02565, 0.05151),
            c(0.05719, 0.02612),
            c(0.40686, 0.0),
            c(0.05915, 0.00073),
            c(0.02565, -0.05151),
            c(0.05915, -0.00073),
            c(0.48614, 0.0),
        ],
    )
    .expect("reference matrix is Hermitian")
}

pub(crate) fn reference_rhs() -> Vec<Complex64> {
    vec![c(0.56751, 0.0), c(0.79592, 0.0), c(0.21084, 0.0)]
}

pub(crate) fn reference_problem() -> SLEProblem {
    SLEProblem::new(reference_matrix(), reference_rhs()).expect("reference instance is valid")
}

/// Tiny deterministic generator so test instances never depend on crate
/// versions or platform entropy.
pub(crate) struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub(crate) fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-1, 1).
    pub(crate) fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// A Haar-ish random 3x3 unitary: Gram-Schmidt on random complex columns.
/// Column-major, column j at entries [3j..3j+3].
pub(crate) fn random_unitary3(rng: &mut SplitMix) -> [Complex64; 9] {
    loop {
        let mut columns = [Complex64::ZERO; 9];
        for z in columns.iter_mut() {
            *z = c(rng.next_symmetric(), rng.next_symmetric());
        }
        let mut ok = true;
        for j in 0..3 {
            for k in 0..j {
                let overlap: Complex64 = (0..3)
                    .map(|r| columns[k * 3 + r].conj() * columns[j * 3 + r])
                    .sum();
                for r in 0..3 {
                    let sub = overlap * columns[k * 3 + r];
                    columns[j * 3 + r] -= sub;
                }
            }
            let norm: f64 = (0..3)
                .map(|r| columns[j * 3 + r].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            for r in 0..3 {
                columns[j * 3 + r] /= norm;
            }
        }
        if ok {
            return columns;
        }
    }
}

/// A random Hermitian instance whose eigenvalues are two-digit ternary
/// fractions k/9 with pairwise distinct second digits, so single-digit phase
/// estimation at position 2 is exact. Returns the problem and the sorted
/// eigenvalues it was built from.
pub(crate) fn random_exact_digit_problem(rng: &mut SplitMix) -> (SLEProblem, [f64; 3]) {
    let numerators = loop {
        let a = 1 + (rng.next_u64() % 8) as i64;
        let b = 1 + (rng.next_u64() % 8) as i64;
        let d = 1 + (rng.next_u64() % 8) as i64;
        if a != b && b != d && a != d && a % 3 != b % 3 && b % 3 != d % 3 && a % 3 != d % 3 {
            let mut ks = [a, b, d];
            ks.sort_unstable();
            break ks;
        }
    };
    let lambdas = [
        numerators[0] as f64 / 9.0,
        numerators[1] as f64 / 9.0,
        numerators[2] as f64 / 9.0,
    ];
    let v = random_unitary3(rng);
    // A = V diag(λ) V†, symmetrized so hermiticity is exact
    let mut entries = vec![Complex64::ZERO; 9];
    for r in 0..3 {
        for s in 0..3 {
            let mut acc = Complex64::ZERO;
            for (j, &lambda) in lambdas.iter().enumerate() {
                acc += c(lambda, 0.0) * v[j * 3 + r] * v[j * 3 + s].conj();
            }
            entries[r * 3 + s] = acc;
        }
    }
    for r in 0..3 {
        entries[r * 3 + r] = c(entries[r * 3 + r].re, 0.0);
        for s in (r + 1)..3 {
            let mean = (entries[r * 3 + s] + entries[s * 3 + r].conj()) / 2.0;
            entries[r * 3 + s] = mean;
            entries[s * 3 + r] = mean.conj();
        }
    }
    let matrix = HermitianMatrix::new(3, entries).expect("symmetrized matrix is Hermitian");

    let rhs = loop {
        let candidate: Vec<Complex64> = (0..3)
            .map(|_| c(rng.next_symmetric(), rng.next_symmetric()))
            .collect();
        if candidate.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3 {
            break candidate;
        }
    };
    (
        SLEProblem::new(matrix, rhs).expect("generated instance is valid"),
        lambdas,
    )
}
