//! Property tests for the state-engine invariants.

use proptest::prelude::*;
use teleframe_core::qcore::{
    apply, born_distribution, partial_trace, random_pure_state, random_unitary, tensor,
    Operator, SubsystemLabel,
};
use teleframe_core::teleport::standard_bell_basis;

use SubsystemLabel::{A, A1, Blank, B};

fn paulis() -> Vec<Operator> {
    vec![
        Operator::identity(2),
        Operator::pauli_x(),
        Operator::pauli_y(),
        Operator::pauli_z(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn unitaries_preserve_norm(seed in any::<u64>(), which in 0usize..6) {
        let s = random_pure_state(seed, 3).relabeled(vec![A1, A, B]).unwrap();
        let basis = standard_bell_basis();
        let (u, target) = match which {
            k @ 0..=3 => (paulis()[k].clone(), A),
            4 => (basis.correction(4).unwrap().clone(), B),
            _ => (random_unitary(seed ^ 0x9e37, 2).unwrap(), A1),
        };
        let out = apply(&u, &[target], &s).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn predicted_probabilities_sum_to_one(seed in any::<u64>()) {
        let s = random_pure_state(seed, 3).relabeled(vec![A1, A, B]).unwrap();
        let basis = standard_bell_basis();
        let probs = born_distribution(&s, &basis.projectors(), &[A1, A]).unwrap();
        let total: f64 = probs.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        for p in probs {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
        }
    }

    #[test]
    fn product_state_factors_are_pure(seed in any::<u64>()) {
        let a = random_pure_state(seed, 1);
        let b = random_pure_state(seed ^ 0x5bd1e995, 2)
            .relabeled(vec![Blank, B])
            .unwrap();
        let product = tensor(&a, &b).unwrap();
        let left = partial_trace(&product, a.labels()).unwrap();
        let right = partial_trace(&product, &[Blank, B]).unwrap();
        prop_assert!((left.purity() - 1.0).abs() < 1e-9);
        prop_assert!((right.purity() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn interval_is_boost_invariant(
        t1 in -10.0f64..10.0, x1 in -10.0f64..10.0,
        t2 in -10.0f64..10.0, x2 in -10.0f64..10.0,
        v in -0.99f64..0.99,
    ) {
        use teleframe_core::relativity::{boost, interval_sq, Frame, SpacetimeEvent};
        let e1 = SpacetimeEvent::new("e1", t1, x1);
        let e2 = SpacetimeEvent::new("e2", t2, x2);
        let f = Frame::new(v).unwrap();
        let before = interval_sq(&e1, &e2);
        let after = interval_sq(&boost(&e1, f), &boost(&e2, f));
        prop_assert!((before - after).abs() < 1e-9);
    }
}

#[test]
fn bell_state_halves_are_maximally_mixed() {
    let basis = standard_bell_basis();
    for i in 1..=4 {
        let bell = basis.state(i).unwrap();
        for label in [A1, A] {
            let rho = partial_trace(bell, &[label]).unwrap();
            assert!((rho.entry(0, 0).re - 0.5).abs() < 1e-10);
            assert!((rho.entry(1, 1).re - 0.5).abs() < 1e-10);
            assert!(rho.entry(0, 1).norm() < 1e-10);
            assert!(rho.entry(1, 0).norm() < 1e-10);
        }
    }
}
