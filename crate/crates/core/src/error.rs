//! Error type shared by all modules.

use crate::qcore::SubsystemLabel;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SimError {
    #[error("duplicate subsystem label {0}")]
    DuplicateLabel(SubsystemLabel),

    #[error("unknown subsystem label {0}")]
    UnknownLabel(SubsystemLabel),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("amplitude count {got} is not 2^{labels} for the given labels")]
    BadAmplitudeCount { labels: usize, got: usize },

    #[error("state norm {norm} deviates from 1 beyond tolerance")]
    NotNormalized { norm: f64 },

    #[error("operator is not unitary (max |UU† − I| entry = {deviation})")]
    NotUnitary { deviation: f64 },

    #[error("operator dimension {0} is not a power of two")]
    BadOperatorDim(usize),

    #[error("invalid projector family: {0}")]
    InvalidProjectors(String),

    #[error(
        "impossible conditioning: forced outcome {outcome} has probability {probability}"
    )]
    ImpossibleConditioning { outcome: usize, probability: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("empty keep list for partial trace")]
    EmptyKeep,

    #[error("Bell outcome index {0} out of range 1..=4")]
    OutcomeOutOfRange(usize),

    #[error("state is not in the branch of outcome {i0} (residual {residual})")]
    BranchMismatch { i0: usize, residual: f64 },

    #[error("state does not have the expected product form: {0}")]
    NotProductForm(String),

    #[error("frame velocity {0} is not strictly inside (-1, 1)")]
    InvalidVelocity(f64),

    #[error("events coincide; no ordering threshold exists")]
    CoincidentEvents,

    #[error("event pair is not future-ordered in the rest frame (Δt = {0})")]
    NotFutureOrdered(f64),

    #[error("signal speed {0} must be positive")]
    NonPositiveSpeed(f64),

    #[error("events {a} and {b} share boosted time {t} within tolerance")]
    EventTimeTie { a: String, b: String, t: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}
