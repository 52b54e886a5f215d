//! Shared fixtures and independent oracles for the integration suite.
//! Everything here goes through the public API only.

use num_complex::Complex64;
use qutrit_sle::{HermitianMatrix, SLEProblem, UnitaryGate, WireLayout};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The reference 3x3 instance: Hermitian matrix with eigenvalues
/// (1/3, 4/9, 5/9) to five printed decimals, and a real right-hand side.
pub fn reference_matrix() -> HermitianMatrix {
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

pub fn reference_rhs() -> Vec<Complex64> {
    vec![c(0.56751, 0.0), c(0.79592, 0.0), c(0.21084, 0.0)]
}

pub fn reference_problem() -> SLEProblem {
    SLEProblem::new(reference_matrix(), reference_rhs()).expect("reference instance is valid")
}

/// The published solution vector for the reference instance.
pub fn reference_solution() -> Vec<Complex64> {
    vec![
        c(0.508890, 0.045054),
        c(0.853352, -0.047654),
        c(0.071299, 0.058623),
    ]
}

/// Deterministic generator, independent of any crate RNG.
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Random 3x3 unitary by Gram-Schmidt; column j at entries [3j..3j+3].
pub fn random_unitary3(rng: &mut SplitMix) -> [Complex64; 9] {
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

/// Random Hermitian 3x3 matrix with entries of order one.
pub fn random_hermitian3(rng: &mut SplitMix) -> HermitianMatrix {
    let mut entries = vec![Complex64::ZERO; 9];
    for r in 0..3 {
        entries[r * 3 + r] = c(rng.next_symmetric(), 0.0);
        for s in (r + 1)..3 {
            let z = c(rng.next_symmetric(), rng.next_symmetric());
            entries[r * 3 + s] = z;
            entries[s * 3 + r] = z.conj();
        }
    }
    HermitianMatrix::new(3, entries).expect("constructed entries are Hermitian")
}

/// Random Hermitian instance with eigenvalues k/9 whose second ternary
/// digits are pairwise distinct, plus a random right-hand side. Phase
/// estimation at digit position 2 is exact for these.
pub fn random_exact_digit_problem(rng: &mut SplitMix) -> (SLEProblem, [f64; 3]) {
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

/// Brute-force oracle: the full `dim x dim` matrix of `gate` acting on the
/// named wires with identity elsewhere, built entry by entry from the index
/// arithmetic alone.
pub fn embed_full(gate: &UnitaryGate, wires: &[usize], layout: &WireLayout) -> Vec<Complex64> {
    let dim = layout.dimension();
    let sub_index = |index: usize| -> usize {
        let mut acc = 0;
        for (k, &w) in wires.iter().enumerate() {
            let weight: usize = wires[k + 1..].iter().map(|&x| layout.radix(x)).product();
            acc += layout.digit_at(index, w) * weight;
        }
        acc
    };
    let mut full = vec![Complex64::ZERO; dim * dim];
    for row in 0..dim {
        for col in 0..dim {
            let rest_match = (0..layout.wire_count())
                .filter(|w| !wires.contains(w))
                .all(|w| layout.digit_at(row, w) == layout.digit_at(col, w));
            if rest_match {
                full[row * dim + col] = gate.entry(sub_index(row), sub_index(col));
            }
        }
    }
    full
}

pub fn matvec(matrix: &[Complex64], vector: &[Complex64]) -> Vec<Complex64> {
    let dim = vector.len();
    (0..dim)
        .map(|r| (0..dim).map(|s| matrix[r * dim + s] * vector[s]).sum())
        .collect()
}

/// Random unit state over the layout.
pub fn random_state(rng: &mut SplitMix, layout: WireLayout) -> qutrit_sle::StateVector {
    let amplitudes: Vec<Complex64> = (0..layout.dimension())
        .map(|_| c(rng.next_symmetric(), rng.next_symmetric()))
        .collect();
    let (state, _) =
        qutrit_sle::StateVector::from_amplitudes(layout, &amplitudes).expect("nonzero amplitudes");
    state
}
