//! State-vector replay of the teleportation-with-superluminal-signaling
//! thought experiment, observed from multiple Lorentz frames.
//!
//! The crate is organized around five layers:
//!
//! - [`qcore`] — dense pure-state simulation over labeled qubits: tensor
//!   products, unitary application, projective measurement with optional
//!   forced outcomes, partial trace, fidelity.
//! - [`teleport`] — the protocol itself: Bell basis and correction table,
//!   the joint initial state, its four-branch decomposition, Alice's
//!   measurement, Bob's correction, and the pre-correction identity seen
//!   by a boosted observer.
//! - [`relativity`] — spacetime events in 1+1 dimensions (c = 1), boosts,
//!   interval classification, and the order-reversal threshold.
//! - [`observer`] — frame-dependent replay: order the protocol steps in a
//!   given frame, assign states step by step, and audit how many
//!   subsystems hold a copy of the teleported state at each step.
//! - [`cloning`] — the no-cloning theorem as executable checks: the
//!   inner-product witness, sampled cloning attempts, and the
//!   measure-and-prepare cloner that works only on known states.
//!
//! Batch sweeps (identity suites, sampled cloning attempts) run in
//! parallel via rayon when the `parallel` feature is enabled (default),
//! and sequentially otherwise. Randomness enters only through explicit
//! seeds, so results are identical in both modes.
//!
//! The two narratives in miniature, measure-then-correct versus
//! correct-then-measure, agreeing on the endpoint while disagreeing on
//! who holds ψ in between:
//!
//! ```
//! use teleframe_core::observer::copy_census;
//! use teleframe_core::qcore::{fidelity, partial_trace, random_pure_state, SubsystemLabel};
//! use teleframe_core::teleport::{
//!     alice_measure, bob_correct, build_initial, dennis_precorrect, standard_bell_basis,
//! };
//!
//! let basis = standard_bell_basis();
//! let psi = random_pure_state(7, 1);
//! let initial = build_initial(&psi, &basis)?;
//! let i0 = 2;
//!
//! // At rest: Alice measures (outcome conditioned to i0), then Bob corrects.
//! let (record, collapsed) = alice_measure(&initial, &basis, Some(i0), None)?;
//! assert!((record.predicted_probability - 0.25).abs() < 1e-10);
//! let carol_final = bob_correct(&collapsed, &basis, i0)?;
//!
//! // Boosted past the reversal threshold: the correction is seen first,
//! // and the only copy of ψ stays on Alice's side until she measures.
//! let precorrected = dennis_precorrect(&initial, &basis, i0)?;
//! let census = copy_census(&precorrected, &psi)?;
//! assert_eq!(census.copy_count, 1);
//! assert!(census.entries[0].is_copy); // A1
//! let (_, dennis_final) = alice_measure(&precorrected, &basis, Some(i0), None)?;
//!
//! // Same endpoint either way, and Bob ends up with ψ.
//! assert!(carol_final.overlap_sq(&dennis_final)? >= 1.0 - 1e-10);
//! let bob = partial_trace(&dennis_final, &[SubsystemLabel::B])?;
//! let psi_b = psi.relabeled(vec![SubsystemLabel::B])?;
//! assert!((fidelity(&bob, &psi_b)? - 1.0).abs() < 1e-10);
//! # Ok::<(), teleframe_core::SimError>(())
//! ```

pub mod batch;
pub mod cloning;
pub mod error;
pub mod observer;
pub mod qcore;
pub mod relativity;
pub mod teleport;
pub mod tolerance;

pub use error::SimError;
pub use qcore::{
    apply, born_distribution, fidelity, measure, partial_trace, random_pure_state,
    random_unitary, tensor, DensityMatrix, MeasurementRecord, Operator, StateVector,
    SubsystemLabel,
};
pub use teleport::{standard_bell_basis, BellBasis, TeleportScenario};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, SimError>;
