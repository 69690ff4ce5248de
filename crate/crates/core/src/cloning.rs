//! The no-cloning theorem as executable checks.
//!
//! A unitary that clones two states forces their inner product s to
//! satisfy s = s², so |s − s²| > 0 certifies that no such unitary
//! exists. The witness is backed by sampled cloning attempts (no random
//! unitary ever clones a non-orthogonal pair) and by the one cloner that
//! is allowed: measure-and-prepare on a state the device builder knows.

use num_complex::Complex64;

use crate::error::SimError;
use crate::qcore::{apply, tensor, Operator, StateVector, SubsystemLabel};
use crate::teleport::confirmation_measure;
use crate::Result;

/// Fidelities of one cloning attempt on each state of a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneAttemptResult {
    pub fidelity_psi: f64,
    pub fidelity_phi: f64,
    pub overlap: Complex64,
}

impl CloneAttemptResult {
    /// True when the attempt cloned both states essentially perfectly.
    pub fn clones_both(&self, tol: f64) -> bool {
        self.fidelity_psi >= 1.0 - tol && self.fidelity_phi >= 1.0 - tol
    }
}

/// The linearity witness |⟨ψ|φ⟩ − ⟨ψ|φ⟩²|. Zero exactly when the inner
/// product is 0 or 1, the only pairs a single unitary may clone.
pub fn no_cloning_witness(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    if psi.num_qubits() != 1 || phi.num_qubits() != 1 {
        return Err(SimError::DimensionMismatch {
            expected: 2,
            got: psi.dim().max(phi.dim()),
        });
    }
    let s = psi.relabeled(vec![SubsystemLabel::Aux(0)])?
        .inner(&phi.relabeled(vec![SubsystemLabel::Aux(0)])?)?;
    Ok((s - s * s).norm())
}

/// Runs the two-qubit unitary `u` on |χ⟩|blank⟩ for χ ∈ {ψ, φ} and scores
/// each output against the perfect clone |χ⟩|χ⟩.
pub fn clone_attempt(
    u: &Operator,
    psi: &StateVector,
    phi: &StateVector,
    blank: &StateVector,
) -> Result<CloneAttemptResult> {
    if u.dim() != 4 {
        return Err(SimError::DimensionMismatch {
            expected: 4,
            got: u.dim(),
        });
    }
    let fidelity_for = |chi: &StateVector| -> Result<f64> {
        let source = chi.relabeled(vec![SubsystemLabel::Aux(0)])?;
        let target_in = blank.relabeled(vec![SubsystemLabel::Blank])?;
        let input = tensor(&source, &target_in)?;
        let output = apply(u, &[SubsystemLabel::Aux(0), SubsystemLabel::Blank], &input)?;
        let ideal = tensor(&source, &chi.relabeled(vec![SubsystemLabel::Blank])?)?;
        output.overlap_sq(&ideal)
    };
    let overlap = psi
        .relabeled(vec![SubsystemLabel::Aux(0)])?
        .inner(&phi.relabeled(vec![SubsystemLabel::Aux(0)])?)?;
    Ok(CloneAttemptResult {
        fidelity_psi: fidelity_for(psi)?,
        fidelity_phi: fidelity_for(phi)?,
        overlap,
    })
}

/// The permitted cloner: measure B against a KNOWN ψ (the device was
/// prepared by someone who knows it) with the outcome conditioned on
/// "yes". On the pre-correction state this leaves both A1 and B carrying
/// ψ: two copies, legally, because ψ was known to the device builder.
pub fn known_state_cloner(state: &StateVector, psi: &StateVector) -> Result<StateVector> {
    let (_, collapsed) = confirmation_measure(state, psi, true, None)?;
    Ok(collapsed)
}
