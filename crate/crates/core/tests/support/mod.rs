//! Independent oracles for the integration tests: everything here works
//! on raw amplitude vectors and full 2^n × 2^n matrices built by
//! Kronecker products, sharing no code with the production bit-indexed
//! paths it checks.
//!
//! Each test binary compiles this module separately, so not every oracle
//! is used by every binary.
#![allow(dead_code)]

use num_complex::Complex64;
use teleframe_core::qcore::{Operator, StateVector, SubsystemLabel};

pub type C = Complex64;

/// Kronecker product of two raw amplitude vectors.
pub fn naive_kron(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Kronecker product of two square matrices (row-major).
pub fn naive_kron_mat(a: &[C], da: usize, b: &[C], db: usize) -> Vec<C> {
    let d = da * db;
    let mut out = vec![C::ZERO; d * d];
    for i1 in 0..da {
        for j1 in 0..da {
            for i2 in 0..db {
                for j2 in 0..db {
                    out[(i1 * db + i2) * d + (j1 * db + j2)] =
                        a[i1 * da + j1] * b[i2 * db + j2];
                }
            }
        }
    }
    out
}

/// Embeds `u` acting on `targets` into the full space of `labels` as an
/// explicit dense matrix: entry (i, j) is U[r][c] when the non-target
/// bits of i and j agree (r, c are the target bits of i, j read in
/// target-list order, first target most significant), else 0.
pub fn naive_embed(u: &Operator, targets: &[SubsystemLabel], labels: &[SubsystemLabel]) -> Vec<C> {
    let n = labels.len();
    let dim = 1usize << n;
    let k = targets.len();
    let shift_of = |l: SubsystemLabel| {
        n - 1 - labels.iter().position(|&x| x == l).expect("known label")
    };
    let target_shifts: Vec<usize> = targets.iter().map(|&t| shift_of(t)).collect();
    let target_mask: usize = target_shifts.iter().map(|&s| 1usize << s).sum();

    let target_bits = |idx: usize| -> usize {
        let mut r = 0usize;
        for (m, &sh) in target_shifts.iter().enumerate() {
            r |= ((idx >> sh) & 1) << (k - 1 - m);
        }
        r
    };

    let mut out = vec![C::ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if (i & !target_mask) != (j & !target_mask) {
                continue;
            }
            out[i * dim + j] = u.entry(target_bits(i), target_bits(j));
        }
    }
    out
}

/// Dense matrix–vector product.
pub fn naive_mat_vec(m: &[C], v: &[C]) -> Vec<C> {
    let d = v.len();
    (0..d)
        .map(|i| (0..d).map(|j| m[i * d + j] * v[j]).sum())
        .collect()
}

/// ⟨s|M|s⟩ through the full matrix.
pub fn naive_expectation(m: &[C], s: &[C]) -> C {
    let mv = naive_mat_vec(m, s);
    s.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Partial trace computed from the full outer product |s⟩⟨s|, summing
/// explicitly over the traced-out configurations.
pub fn naive_partial_trace(s: &StateVector, keep: &[SubsystemLabel]) -> Vec<C> {
    let n = s.num_qubits();
    let labels = s.labels();
    let shift_of = |l: SubsystemLabel| {
        n - 1 - labels.iter().position(|&x| x == l).expect("known label")
    };
    let keep_shifts: Vec<usize> = keep.iter().map(|&l| shift_of(l)).collect();
    let rest_shifts: Vec<usize> = (0..n)
        .map(|pos| n - 1 - pos)
        .filter(|sh| !keep_shifts.contains(sh))
        .collect();
    let k = keep.len();
    let dk = 1usize << k;

    // Full density matrix ρ = |s⟩⟨s|.
    let amps = s.amplitudes();
    let dim = amps.len();
    let mut rho = vec![C::ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            rho[i * dim + j] = amps[i] * amps[j].conj();
        }
    }

    let assemble = |kept: usize, rest: usize| -> usize {
        let mut idx = 0usize;
        for (m, &sh) in keep_shifts.iter().enumerate() {
            idx |= ((kept >> (k - 1 - m)) & 1) << sh;
        }
        for (m, &sh) in rest_shifts.iter().enumerate() {
            idx |= ((rest >> m) & 1) << sh;
        }
        idx
    };

    let mut out = vec![C::ZERO; dk * dk];
    for i in 0..dk {
        for j in 0..dk {
            for r in 0..1usize << rest_shifts.len() {
                out[i * dk + j] += rho[assemble(i, r) * dim + assemble(j, r)];
            }
        }
    }
    out
}

/// tr(M²) for a raw matrix.
pub fn naive_purity(m: &[C], dim: usize) -> f64 {
    let mut acc = C::ZERO;
    for i in 0..dim {
        for j in 0..dim {
            acc += m[i * dim + j] * m[j * dim + i];
        }
    }
    acc.re
}

/// ⟨ψ|M|ψ⟩ for a raw matrix against pure-state amplitudes.
pub fn naive_fidelity(m: &[C], psi: &[C]) -> f64 {
    naive_expectation(m, psi).re
}

pub fn max_entry_gap(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
