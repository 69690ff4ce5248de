//! Projective measurement with Born-rule prediction, seeded sampling and
//! explicit forced outcomes.
//!
//! Forcing replays the single history in which a given outcome occurred.
//! It is a first-class mechanism, recorded in the result, not rejection
//! sampling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SimError;
use crate::qcore::operator::{apply_matrix_raw, Operator};
use crate::qcore::{StateVector, SubsystemLabel};
use crate::tolerance::{TOL_FORCING, TOL_IDENTITY};
use crate::Result;

/// Outcome of one projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    /// Index into the projector list.
    pub outcome_index: usize,
    /// Born probability of that outcome on the pre-measurement state.
    pub predicted_probability: f64,
    /// True when the outcome was conditioned rather than sampled.
    pub forced: bool,
}

fn validate_projectors(projectors: &[Operator], target_count: usize) -> Result<()> {
    if projectors.is_empty() {
        return Err(SimError::InvalidProjectors("empty projector list".into()));
    }
    let dim = 1usize << target_count;
    let mut sum = Operator::new(dim, vec![Complex64::ZERO; dim * dim])?;
    for (k, p) in projectors.iter().enumerate() {
        if p.dim() != dim {
            return Err(SimError::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        if !p.is_hermitian(TOL_IDENTITY) {
            return Err(SimError::InvalidProjectors(format!(
                "projector {k} is not Hermitian"
            )));
        }
        if !p.is_idempotent(TOL_IDENTITY) {
            return Err(SimError::InvalidProjectors(format!(
                "projector {k} is not idempotent"
            )));
        }
        for (j, q) in projectors.iter().enumerate().skip(k + 1) {
            let prod = p.matmul(q)?;
            let dev = prod.max_entry_distance(&Operator::new(
                dim,
                vec![Complex64::ZERO; dim * dim],
            )?)?;
            if dev > TOL_IDENTITY {
                return Err(SimError::InvalidProjectors(format!(
                    "projectors {k} and {j} are not orthogonal (deviation {dev})"
                )));
            }
        }
        sum = sum_operators(&sum, p)?;
    }
    let dev = sum.max_entry_distance(&Operator::identity(dim))?;
    if dev > TOL_IDENTITY {
        return Err(SimError::InvalidProjectors(format!(
            "projectors do not resolve the identity (deviation {dev})"
        )));
    }
    Ok(())
}

fn sum_operators(a: &Operator, b: &Operator) -> Result<Operator> {
    let entries = a
        .entries()
        .iter()
        .zip(b.entries().iter())
        .map(|(x, y)| x + y)
        .collect();
    Operator::new(a.dim(), entries)
}

/// Born probabilities of each projector on the target subsystems.
pub fn born_distribution(
    s: &StateVector,
    projectors: &[Operator],
    targets: &[SubsystemLabel],
) -> Result<Vec<f64>> {
    validate_projectors(projectors, targets.len())?;
    born_distribution_unchecked(s, projectors, targets)
}

fn born_distribution_unchecked(
    s: &StateVector,
    projectors: &[Operator],
    targets: &[SubsystemLabel],
) -> Result<Vec<f64>> {
    projectors
        .iter()
        .map(|p| {
            let projected = apply_matrix_raw(p, targets, s)?;
            // ⟨s|P|s⟩ = ‖P|s⟩‖² for Hermitian idempotent P
            Ok(projected.iter().map(|a| a.norm_sqr()).sum::<f64>())
        })
        .collect()
}

/// Draws an outcome index from `distribution` with the given seed.
pub fn sample_outcome(seed: u64, distribution: &[f64]) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (k, &p) in distribution.iter().enumerate() {
        acc += p;
        if u < acc {
            return k;
        }
    }
    // Rounding can leave acc fractionally below 1; fall back to the last
    // outcome that actually carries probability.
    distribution
        .iter()
        .rposition(|&p| p > 0.0)
        .unwrap_or(distribution.len() - 1)
}

/// Projective measurement of the target subsystems.
///
/// The projectors must be Hermitian, idempotent, pairwise orthogonal and
/// sum to the identity on the target space (all within 1e-10). When
/// `forced` is given, that outcome is selected regardless of probability,
/// provided its probability exceeds 1e-12; otherwise the outcome is
/// sampled from the Born distribution with `rng_seed` (default 0). The
/// returned state is the renormalized projection.
pub fn measure(
    s: &StateVector,
    projectors: &[Operator],
    targets: &[SubsystemLabel],
    forced: Option<usize>,
    rng_seed: Option<u64>,
) -> Result<(MeasurementRecord, StateVector)> {
    validate_projectors(projectors, targets.len())?;
    let distribution = born_distribution_unchecked(s, projectors, targets)?;

    let (outcome, was_forced) = match forced {
        Some(k) => {
            if k >= projectors.len() {
                return Err(SimError::InvalidProjectors(format!(
                    "forced outcome {k} exceeds projector count {}",
                    projectors.len()
                )));
            }
            if distribution[k] <= TOL_FORCING {
                return Err(SimError::ImpossibleConditioning {
                    outcome: k,
                    probability: distribution[k],
                });
            }
            (k, true)
        }
        None => (sample_outcome(rng_seed.unwrap_or(0), &distribution), false),
    };

    let mut amps = apply_matrix_raw(&projectors[outcome], targets, s)?;
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    let collapsed = StateVector::new(s.labels().to_vec(), amps)?;

    Ok((
        MeasurementRecord {
            outcome_index: outcome,
            predicted_probability: distribution[outcome],
            forced: was_forced,
        },
        collapsed,
    ))
}
