//! Numerical tolerances used across the crate.
//!
//! All state vectors live in dimension ≤ 16 and every operation is dense
//! double-precision algebra, so identities hold to near machine precision.
//! The bands below leave a few digits of headroom for accumulated rounding.

/// Algebraic identities and probabilities: norms, orthonormality,
/// resolutions of identity, Born-rule sums, state-equality checks.
pub const TOL_IDENTITY: f64 = 1e-10;

/// Positivity of reduced density matrices. Eigenvalues of a partial trace
/// can round slightly below zero; anything past this band is a bug.
pub const TOL_POSITIVITY: f64 = 1e-9;

/// Copy census: a subsystem counts as a copy when both its purity and its
/// fidelity with the reference state sit within this band of 1. Exact
/// copies score 1.0 and entangled halves score 0.5, so the band separates
/// the two by eight orders of magnitude.
pub const CENSUS_EPS: f64 = 1e-8;

/// Forcing a measurement outcome whose Born probability is at or below
/// this floor is an impossible conditioning, reported as an error rather
/// than silently renormalized.
pub const TOL_FORCING: f64 = 1e-12;

/// Classification band for lightlike intervals: |Δt² − Δx²| at or below
/// this is treated as zero.
pub const TOL_LIGHTLIKE: f64 = 1e-12;

/// Two protocol events whose boosted times differ by at most this are a
/// tie, which makes the frame ordering ill-defined.
pub const TOL_EVENT_TIE: f64 = 1e-12;

/// Interval invariance and velocity composition under boosts. Slightly
/// looser than [`TOL_IDENTITY`]: γ factors amplify rounding.
pub const TOL_BOOST: f64 = 1e-9;

/// A frame velocity must stay below 1 − this margin for γ to be finite.
pub const FRAME_V_MARGIN: f64 = 1e-12;

// The bands must stay ordered; checked at compile time.
const _: () = {
    assert!(TOL_FORCING < TOL_IDENTITY);
    assert!(TOL_IDENTITY < TOL_POSITIVITY);
    assert!(TOL_POSITIVITY < CENSUS_EPS);
};
