//! Oracle-backed checks of the state engine: every value asserted here
//! was computed by the naive full-matrix implementations in `support`,
//! frozen hand expansions, or Monte-Carlo statistics, never by the code
//! under test.

mod support;

use num_complex::Complex64 as C;
use support::*;
use teleframe_core::qcore::{
    apply, born_distribution, fidelity, measure, partial_trace, random_pure_state,
    random_unitary, tensor, Operator, StateVector, SubsystemLabel,
};
use teleframe_core::teleport::{
    build_initial, dennis_precorrect_branch_sum, standard_bell_basis,
};

use SubsystemLabel::{A, A1, Aux, Blank, B};

const SQ: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[test]
fn tensor_matches_hand_expansion() {
    // (0.6|0⟩ + 0.8|1⟩) ⊗ Φ+ expands to
    // (0.6/√2, 0, 0, 0.6/√2, 0.8/√2, 0, 0, 0.8/√2).
    let psi = StateVector::single_qubit(A1, C::new(0.6, 0.0), C::new(0.8, 0.0)).unwrap();
    let phi_plus = StateVector::new(
        vec![A, B],
        vec![C::new(SQ, 0.0), C::ZERO, C::ZERO, C::new(SQ, 0.0)],
    )
    .unwrap();
    let product = tensor(&psi, &phi_plus).unwrap();
    let expected = [
        0.42426406871192845,
        0.0,
        0.0,
        0.42426406871192845,
        0.565685424949238,
        0.0,
        0.0,
        0.565685424949238,
    ];
    for (a, e) in product.amplitudes().iter().zip(expected.iter()) {
        assert!((a.re - e).abs() < 1e-15 && a.im.abs() < 1e-15);
    }
}

#[test]
fn tensor_agrees_with_naive_kron() {
    for seed in 0..20 {
        let a = random_pure_state(seed, 2);
        let b = random_pure_state(seed + 1000, 1).relabeled(vec![Blank]).unwrap();
        let product = tensor(&a, &b).unwrap();
        let expected = naive_kron(a.amplitudes(), b.amplitudes());
        assert!(max_entry_gap(product.amplitudes(), &expected) < 1e-15);
    }
}

#[test]
fn apply_agrees_with_full_matrix_embedding() {
    // Random 1- and 2-qubit unitaries on every target choice of a
    // 3-qubit state, against the explicit dense embedding.
    let labels = [A1, A, B];
    for seed in 0..10 {
        let s = random_pure_state(seed, 3)
            .relabeled(labels.to_vec())
            .unwrap();
        for t in labels {
            let u = random_unitary(seed * 31 + 1, 2).unwrap();
            let fast = apply(&u, &[t], &s).unwrap();
            let slow = naive_mat_vec(&naive_embed(&u, &[t], &labels), s.amplitudes());
            assert!(max_entry_gap(fast.amplitudes(), &slow) < 1e-12);
        }
        for pair in [[A1, A], [A, B], [B, A1], [A, A1]] {
            let u = random_unitary(seed * 57 + 2, 4).unwrap();
            let fast = apply(&u, &pair, &s).unwrap();
            let slow = naive_mat_vec(&naive_embed(&u, &pair, &labels), s.amplitudes());
            assert!(max_entry_gap(fast.amplitudes(), &slow) < 1e-12);
        }
    }
}

#[test]
fn born_distribution_agrees_with_naive_expectation() {
    let basis = standard_bell_basis();
    let labels = [A1, A, B];
    for seed in 0..10 {
        let s = random_pure_state(seed, 3)
            .relabeled(labels.to_vec())
            .unwrap();
        let fast = born_distribution(&s, &basis.projectors(), &[A1, A]).unwrap();
        for (k, projector) in basis.projectors().iter().enumerate() {
            let embedded = naive_embed(projector, &[A1, A], &labels);
            let expected = naive_expectation(&embedded, s.amplitudes());
            assert!((fast[k] - expected.re).abs() < 1e-12);
            assert!(expected.im.abs() < 1e-12);
        }
        let total: f64 = fast.iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
    }
}

#[test]
fn partial_trace_agrees_with_naive_outer_product_route() {
    for seed in 0..10 {
        let s = random_pure_state(seed, 3)
            .relabeled(vec![A1, A, B])
            .unwrap();
        for keep in [vec![A1], vec![B], vec![A1, B], vec![B, A]] {
            let fast = partial_trace(&s, &keep).unwrap();
            let slow = naive_partial_trace(&s, &keep);
            assert!(max_entry_gap(fast.entries(), &slow) < 1e-12);
            assert!((fast.purity() - naive_purity(&slow, fast.dim())).abs() < 1e-12);
        }
    }
}

#[test]
fn precorrected_state_reduces_to_maximally_mixed_b() {
    // Brute-force partial trace of the branch-sum form ½ Σ |EPRᵢ⟩U†ᵢ₀Uᵢ|ψ⟩:
    // keeping B must give I/2 for every i0.
    let basis = standard_bell_basis();
    for i0 in 1..=4 {
        let psi = random_pure_state(70 + i0 as u64, 1);
        let initial = build_initial(&psi, &basis).unwrap();
        let eq5 = dennis_precorrect_branch_sum(&initial, &basis, i0).unwrap();
        let slow = naive_partial_trace(&eq5, &[B]);
        let half_identity = [
            C::new(0.5, 0.0),
            C::ZERO,
            C::ZERO,
            C::new(0.5, 0.0),
        ];
        assert!(max_entry_gap(&slow, &half_identity) < 1e-10, "i0 = {i0}");
        // The production path agrees.
        let fast = partial_trace(&eq5, &[B]).unwrap();
        assert!(max_entry_gap(fast.entries(), &half_identity) < 1e-10);
    }
}

#[test]
fn fidelity_agrees_with_naive_route() {
    for seed in 0..10 {
        let s = random_pure_state(seed, 2).relabeled(vec![A, B]).unwrap();
        let probe = random_pure_state(seed + 99, 1).relabeled(vec![B]).unwrap();
        let rho = partial_trace(&s, &[B]).unwrap();
        let fast = fidelity(&rho, &probe).unwrap();
        let slow = naive_fidelity(&naive_partial_trace(&s, &[B]), probe.amplitudes());
        assert!((fast - slow).abs() < 1e-12);
        assert!((-1e-10..=1.0 + 1e-10).contains(&fast));
    }
}

#[test]
fn collapse_is_projector_fixed_point_on_random_states() {
    let basis = standard_bell_basis();
    for seed in 0..20 {
        let s = random_pure_state(seed, 3)
            .relabeled(vec![A1, A, B])
            .unwrap();
        let (record, collapsed) =
            measure(&s, &basis.projectors(), &[A1, A], None, Some(seed)).unwrap();
        let embedded = naive_embed(
            &basis.projectors()[record.outcome_index],
            &[A1, A],
            &[A1, A, B],
        );
        let reprojected = naive_mat_vec(&embedded, collapsed.amplitudes());
        assert!(max_entry_gap(&reprojected, collapsed.amplitudes()) < 1e-10);
    }
}

#[test]
fn amplitude_statistics_match_rotation_invariance() {
    // Mean of |amplitude_0|² over 10⁴ uniform random 2-qubit states is
    // 1/4 within five standard errors.
    let n = 10_000usize;
    let samples: Vec<f64> = (0..n)
        .map(|k| random_pure_state(k as u64, 2).amplitudes()[0].norm_sqr())
        .collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    let standard_error = (var / n as f64).sqrt();
    assert!(
        (mean - 0.25).abs() < 5.0 * standard_error,
        "mean {mean}, SE {standard_error}"
    );
}

#[test]
fn measured_outcome_frequencies_follow_born_rule() {
    // Freely sampled measurements of |+⟩ land on each side roughly half
    // the time; 5σ band for 2000 Bernoulli(1/2) draws is ±0.056.
    let plus = StateVector::single_qubit(Aux(0), C::new(SQ, 0.0), C::new(SQ, 0.0)).unwrap();
    let projectors = vec![
        Operator::projector_onto(&StateVector::basis_state(vec![Aux(0)], 0).unwrap()),
        Operator::projector_onto(&StateVector::basis_state(vec![Aux(0)], 1).unwrap()),
    ];
    let n = 2000;
    let ones: usize = (0..n)
        .map(|k| {
            let (record, _) = measure(&plus, &projectors, &[Aux(0)], None, Some(k as u64)).unwrap();
            record.outcome_index
        })
        .sum();
    let frequency = ones as f64 / n as f64;
    assert!((frequency - 0.5).abs() < 5.0 * (0.25f64 / n as f64).sqrt());
}
