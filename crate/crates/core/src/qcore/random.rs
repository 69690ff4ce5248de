//! Seed-deterministic random states and unitaries.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::qcore::{Operator, StateVector, SubsystemLabel};
use crate::Result;

fn gaussian_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// A rotation-invariant random pure state on `n_qubits` qubits, labeled
/// `Aux(0..n)`: independent complex Gaussian amplitudes, normalized.
/// Identical seeds give identical states.
pub fn random_pure_state(seed: u64, n_qubits: usize) -> StateVector {
    assert!(n_qubits >= 1, "need at least one qubit");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1usize << n_qubits;
    let mut amps: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(&mut rng)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    let labels = (0..n_qubits as u8).map(SubsystemLabel::Aux).collect();
    StateVector::new(labels, amps).expect("normalized by construction")
}

/// A Haar-random unitary of the given power-of-two dimension: a complex
/// Gaussian matrix orthonormalized column-by-column (modified
/// Gram-Schmidt, which fixes the R diagonal positive).
pub fn random_unitary(seed: u64, dim: usize) -> Result<Operator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| gaussian_complex(&mut rng)).collect())
        .collect();
    for j in 0..dim {
        for i in 0..j {
            let proj: Complex64 = cols[i]
                .iter()
                .zip(cols[j].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let basis_col = cols[i].clone();
            for (target, b) in cols[j].iter_mut().zip(basis_col.iter()) {
                *target -= proj * b;
            }
        }
        let norm = cols[j].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in cols[j].iter_mut() {
            *a /= norm;
        }
    }
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            entries[i * dim + j] = v;
        }
    }
    Operator::unitary(dim, entries)
}
