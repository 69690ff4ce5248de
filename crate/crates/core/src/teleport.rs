//! The teleportation protocol over a shared maximally entangled pair:
//! Bell basis with its correction table, the joint initial state, its
//! four-branch decomposition, Alice's Bell measurement, Bob's correction,
//! and the pre-correction identity assigned by an observer who sees the
//! correction happen first.
//!
//! Index convention (validated numerically, not taken on faith):
//!
//! | i | Bell state              | correction Uᵢ |
//! |---|-------------------------|---------------|
//! | 1 | Φ+ = (|00⟩+|11⟩)/√2     | I             |
//! | 2 | Ψ+ = (|01⟩+|10⟩)/√2     | X             |
//! | 3 | Φ− = (|00⟩−|11⟩)/√2     | Z             |
//! | 4 | Ψ− = (|01⟩−|10⟩)/√2     | X·Z           |
//!
//! The shared resource is Φ+ (index 1), so U₁ = I anchors the table. All
//! corrections are real Pauli products; every state comparison is
//! phase-insensitive.

use num_complex::Complex64;

use crate::error::SimError;
use crate::qcore::{
    apply, born_distribution, measure, partial_trace, tensor, MeasurementRecord, Operator,
    StateVector, SubsystemLabel,
};
use crate::tolerance::TOL_IDENTITY;
use crate::Result;

use SubsystemLabel::{A, A1, B};

/// The four Bell states on (A1, A) paired with their corrections on B.
#[derive(Debug, Clone)]
pub struct BellBasis {
    states: Vec<StateVector>,
    corrections: Vec<Operator>,
    epr_index: usize,
}

impl BellBasis {
    /// Validates orthonormality of the four states (1e-10), unitarity of
    /// the four corrections, and the index of the shared resource. The
    /// pairing between states and corrections is validated separately by
    /// the reassembly identity, which fails loudly for a mismatched table.
    pub fn new(
        states: Vec<StateVector>,
        corrections: Vec<Operator>,
        epr_index: usize,
    ) -> Result<Self> {
        if states.len() != 4 || corrections.len() != 4 {
            return Err(SimError::InvalidScenario(format!(
                "a Bell basis needs 4 states and 4 corrections, got {} and {}",
                states.len(),
                corrections.len()
            )));
        }
        if !(1..=4).contains(&epr_index) {
            return Err(SimError::OutcomeOutOfRange(epr_index));
        }
        for (i, s) in states.iter().enumerate() {
            if s.labels() != [A1, A] {
                return Err(SimError::InvalidScenario(format!(
                    "Bell state {i} must live on labels (A1, A)"
                )));
            }
            for (j, t) in states.iter().enumerate() {
                let overlap = s.inner(t)?.norm();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (overlap - expected).abs() > TOL_IDENTITY {
                    return Err(SimError::InvalidScenario(format!(
                        "Bell states {i} and {j} have overlap {overlap}"
                    )));
                }
            }
        }
        for (i, u) in corrections.iter().enumerate() {
            if u.dim() != 2 {
                return Err(SimError::DimensionMismatch {
                    expected: 2,
                    got: u.dim(),
                });
            }
            if !u.is_unitary() {
                return Err(SimError::InvalidScenario(format!(
                    "correction {} is not unitary",
                    i + 1
                )));
            }
        }
        Ok(Self {
            states,
            corrections,
            epr_index,
        })
    }

    /// Bell state for outcome `i0` (1-based).
    pub fn state(&self, i0: usize) -> Result<&StateVector> {
        self.check_index(i0)?;
        Ok(&self.states[i0 - 1])
    }

    /// Correction unitary for outcome `i0` (1-based).
    pub fn correction(&self, i0: usize) -> Result<&Operator> {
        self.check_index(i0)?;
        Ok(&self.corrections[i0 - 1])
    }

    /// The shared resource state |EPR⟩.
    pub fn epr(&self) -> &StateVector {
        &self.states[self.epr_index - 1]
    }

    pub fn epr_index(&self) -> usize {
        self.epr_index
    }

    /// Projectors |EPRᵢ⟩⟨EPRᵢ| in outcome order, for the joint measurement.
    pub fn projectors(&self) -> Vec<Operator> {
        self.states.iter().map(Operator::projector_onto).collect()
    }

    fn check_index(&self, i0: usize) -> Result<()> {
        if (1..=4).contains(&i0) {
            Ok(())
        } else {
            Err(SimError::OutcomeOutOfRange(i0))
        }
    }
}

/// How the Bell outcome is produced during a replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeRule {
    /// Condition every replay on this outcome (1..=4).
    Forced(usize),
    /// Sample the outcome from the Born distribution with the scenario
    /// seed; the same draw is reproduced in every frame.
    Sampled,
}

/// A complete teleportation run: the unknown state, how the Bell outcome
/// is chosen, whether Bob runs a confirmation measurement, and the seed.
#[derive(Debug, Clone)]
pub struct TeleportScenario {
    pub psi: StateVector,
    pub outcome: OutcomeRule,
    pub confirmation_enabled: bool,
    pub seed: u64,
}

impl TeleportScenario {
    pub fn new(
        psi: StateVector,
        outcome: OutcomeRule,
        confirmation_enabled: bool,
        seed: u64,
    ) -> Result<Self> {
        if psi.num_qubits() != 1 {
            return Err(SimError::InvalidScenario(format!(
                "the teleported state must be a single qubit, got {} qubits",
                psi.num_qubits()
            )));
        }
        if let OutcomeRule::Forced(i0) = outcome {
            if !(1..=4).contains(&i0) {
                return Err(SimError::OutcomeOutOfRange(i0));
            }
        }
        if confirmation_enabled && outcome == OutcomeRule::Sampled {
            return Err(SimError::InvalidScenario(
                "a confirmation measurement conditions on the future Bell outcome, \
                 so it requires a forced outcome, not a sampled one"
                    .into(),
            ));
        }
        Ok(Self {
            psi,
            outcome,
            confirmation_enabled,
            seed,
        })
    }
}

/// The standard basis: Φ+ shared, corrections (I, X, Z, X·Z).
pub fn standard_bell_basis() -> BellBasis {
    let sq = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64| Complex64::new(re, 0.0);
    let bell = |amps: [f64; 4]| {
        StateVector::new(vec![A1, A], amps.iter().map(|&a| c(a)).collect())
            .expect("Bell states are normalized")
    };
    let states = vec![
        bell([sq, 0.0, 0.0, sq]),   // Φ+
        bell([0.0, sq, sq, 0.0]),   // Ψ+
        bell([sq, 0.0, 0.0, -sq]),  // Φ−
        bell([0.0, sq, -sq, 0.0]),  // Ψ−
    ];
    let x_z = Operator::pauli_x()
        .matmul(&Operator::pauli_z())
        .expect("2x2 product");
    let corrections = vec![
        Operator::identity(2),
        Operator::pauli_x(),
        Operator::pauli_z(),
        x_z,
    ];
    BellBasis::new(states, corrections, 1).expect("standard basis is valid")
}

/// The joint initial state |ψ⟩_A1 ⊗ |EPR⟩_{A,B} on labels (A1, A, B).
pub fn build_initial(psi: &StateVector, basis: &BellBasis) -> Result<StateVector> {
    if psi.num_qubits() != 1 {
        return Err(SimError::InvalidScenario(format!(
            "the teleported state must be a single qubit, got {} qubits",
            psi.num_qubits()
        )));
    }
    let psi_a1 = psi.relabeled(vec![A1])?;
    let epr_ab = basis.epr().relabeled(vec![A, B])?;
    tensor(&psi_a1, &epr_ab)
}

/// Recovers ψ from a state with the exact product structure of
/// [`build_initial`]; errors when the structure is absent.
fn extract_psi(initial: &StateVector, basis: &BellBasis) -> Result<StateVector> {
    if initial.labels() != [A1, A, B] {
        return Err(SimError::NotProductForm(
            "expected labels (A1, A, B)".into(),
        ));
    }
    let epr = basis.epr().amplitudes();
    let amps = initial.amplitudes();
    // ψ_b = ⟨b|⊗⟨EPR| applied to the state
    let mut psi = [Complex64::ZERO; 2];
    for b in 0..2 {
        for j in 0..4 {
            psi[b] += epr[j].conj() * amps[(b << 2) | j];
        }
    }
    let norm = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
    if (norm - 1.0).abs() > TOL_IDENTITY {
        return Err(SimError::NotProductForm(format!(
            "projection onto the shared pair has norm {norm}, expected 1"
        )));
    }
    let psi = StateVector::new(vec![A1], vec![psi[0] / norm, psi[1] / norm])?;
    // Confirm the product structure: ψ ⊗ EPR must reproduce the input.
    let rebuilt = build_initial(&psi, basis)?;
    let dist = rebuilt.amplitude_distance(initial)?;
    if dist > TOL_IDENTITY {
        return Err(SimError::NotProductForm(format!(
            "state deviates from ψ ⊗ EPR by {dist}"
        )));
    }
    Ok(psi)
}

/// The four-branch decomposition of the initial state: branch i is
/// |EPRᵢ⟩_{A1,A} ⊗ Uᵢ|ψ⟩_B with amplitude weight 1/2. Branches are built
/// directly from the correction table, not by projecting the input.
pub fn bell_branches(
    initial: &StateVector,
    basis: &BellBasis,
) -> Result<Vec<(StateVector, f64)>> {
    let psi = extract_psi(initial, basis)?;
    let psi_b = psi.relabeled(vec![B])?;
    (1..=4)
        .map(|i| {
            let epr_i = basis.state(i)?;
            let corrected = apply(basis.correction(i)?, &[B], &psi_b)?;
            Ok((tensor(epr_i, &corrected)?, 0.5))
        })
        .collect()
}

/// Alice's joint Bell measurement on (A1, A). Outcomes are reported as
/// Bell indices 1..=4.
pub fn alice_measure(
    state: &StateVector,
    basis: &BellBasis,
    forced_i0: Option<usize>,
    seed: Option<u64>,
) -> Result<(MeasurementRecord, StateVector)> {
    if let Some(i0) = forced_i0 {
        if !(1..=4).contains(&i0) {
            return Err(SimError::OutcomeOutOfRange(i0));
        }
    }
    let (mut record, collapsed) = measure(
        state,
        &basis.projectors(),
        &[A1, A],
        forced_i0.map(|i0| i0 - 1),
        seed,
    )?;
    record.outcome_index += 1;
    Ok((record, collapsed))
}

/// Born distribution of the four Bell outcomes on (A1, A), in index order.
pub fn bell_distribution(state: &StateVector, basis: &BellBasis) -> Result<Vec<f64>> {
    born_distribution(state, &basis.projectors(), &[A1, A])
}

/// Bob's correction: applies U†ᵢ₀ on B to a post-measurement state. The
/// input must lie in the i0 branch; that precondition is checked, not
/// trusted.
pub fn bob_correct(state: &StateVector, basis: &BellBasis, i0: usize) -> Result<StateVector> {
    let projector = Operator::projector_onto(basis.state(i0)?);
    let projected = crate::qcore::apply_matrix_raw(&projector, &[A1, A], state)?;
    let residual = projected
        .iter()
        .zip(state.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > TOL_IDENTITY {
        return Err(SimError::BranchMismatch { i0, residual });
    }
    apply(&basis.correction(i0)?.dagger(), &[B], state)
}

/// The state an observer assigns after watching Bob apply U†ᵢ₀ while
/// Alice has not yet measured: U†ᵢ₀ on B applied to the full initial
/// state. The input must have the exact ψ ⊗ EPR product structure.
pub fn dennis_precorrect(
    initial: &StateVector,
    basis: &BellBasis,
    i0: usize,
) -> Result<StateVector> {
    extract_psi(initial, basis)?;
    apply(&basis.correction(i0)?.dagger(), &[B], initial)
}

/// The branch-sum form of the pre-correction state:
/// ½ Σᵢ |EPRᵢ⟩_{A1,A} ⊗ U†ᵢ₀Uᵢ|ψ⟩_B, built term by term.
pub fn dennis_precorrect_branch_sum(
    initial: &StateVector,
    basis: &BellBasis,
    i0: usize,
) -> Result<StateVector> {
    let psi = extract_psi(initial, basis)?;
    let psi_b = psi.relabeled(vec![B])?;
    let u_dag = basis.correction(i0)?.dagger();
    let mut amps = [Complex64::ZERO; 8];
    for i in 1..=4 {
        let b_part = apply(&u_dag, &[B], &apply(basis.correction(i)?, &[B], &psi_b)?)?;
        let branch = tensor(basis.state(i)?, &b_part)?;
        for (acc, a) in amps.iter_mut().zip(branch.amplitudes()) {
            *acc += 0.5 * a;
        }
    }
    StateVector::new(vec![A1, A, B], amps.to_vec())
}

/// Bob's confirmation measurement: projects B onto {|ψ⟩⟨ψ|, 1−|ψ⟩⟨ψ|}.
/// Outcome 0 is "yes, B carries ψ". Forcing yes models a device prepared
/// by someone who knows ψ, read out in the only way consistent with the
/// conditioned history.
pub fn confirmation_measure(
    state: &StateVector,
    psi: &StateVector,
    forced_yes: bool,
    seed: Option<u64>,
) -> Result<(MeasurementRecord, StateVector)> {
    let projectors = confirmation_projectors(psi)?;
    measure(
        state,
        &projectors,
        &[B],
        if forced_yes { Some(0) } else { None },
        seed,
    )
}

/// The {yes, no} projector pair for a confirmation of `psi`.
pub fn confirmation_projectors(psi: &StateVector) -> Result<Vec<Operator>> {
    if psi.num_qubits() != 1 {
        return Err(SimError::DimensionMismatch {
            expected: 2,
            got: psi.dim(),
        });
    }
    let p_yes = Operator::projector_onto(psi);
    let entries = Operator::identity(2)
        .entries()
        .iter()
        .zip(p_yes.entries().iter())
        .map(|(i, p)| i - p)
        .collect();
    let p_no = Operator::new(2, entries)?;
    Ok(vec![p_yes, p_no])
}

// ---------------------------------------------------------------------
// Identity suites: the numerical checks behind the protocol equations,
// swept over seeded random ψ. Each returns the worst deviation observed.
// ---------------------------------------------------------------------

/// Deviation of the branch sum from the initial state for one ψ.
pub fn reassembly_deviation(basis: &BellBasis, psi: &StateVector) -> Result<f64> {
    let initial = build_initial(psi, basis)?;
    let branches = bell_branches(&initial, basis)?;
    let mut amps = [Complex64::ZERO; 8];
    for (branch, weight) in &branches {
        for (acc, a) in amps.iter_mut().zip(branch.amplitudes()) {
            *acc += weight * a;
        }
    }
    let dist: f64 = amps
        .iter()
        .zip(initial.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(dist)
}

/// Worst deviation between the two orderings for one ψ and one i0:
/// measure-then-correct versus precorrect-then-measure, plus the final
/// fidelity of Bob's reduced state with ψ.
pub fn order_equivalence_deviation(
    basis: &BellBasis,
    psi: &StateVector,
    i0: usize,
) -> Result<f64> {
    let initial = build_initial(psi, basis)?;

    let (_, after_measure) = alice_measure(&initial, basis, Some(i0), None)?;
    let carol_final = bob_correct(&after_measure, basis, i0)?;

    let precorrected = dennis_precorrect(&initial, basis, i0)?;
    let (_, dennis_final) = alice_measure(&precorrected, basis, Some(i0), None)?;

    let cross = 1.0 - carol_final.overlap_sq(&dennis_final)?;
    let psi_b = psi.relabeled(vec![B])?;
    let fid_carol = fidelity_on_b(&carol_final, &psi_b)?;
    let fid_dennis = fidelity_on_b(&dennis_final, &psi_b)?;
    Ok(cross
        .abs()
        .max((1.0 - fid_carol).abs())
        .max((1.0 - fid_dennis).abs()))
}

fn fidelity_on_b(state: &StateVector, psi_b: &StateVector) -> Result<f64> {
    let rho = partial_trace(state, &[B])?;
    crate::qcore::fidelity(&rho, psi_b)
}

/// Deviation between the two algebraic forms of the pre-correction state
/// for one ψ and one i0, plus its two reduced-state requirements: A1
/// carries ψ exactly and B is maximally mixed.
pub fn dennis_identity_deviation(
    basis: &BellBasis,
    psi: &StateVector,
    i0: usize,
) -> Result<f64> {
    let initial = build_initial(psi, basis)?;
    let direct = dennis_precorrect(&initial, basis, i0)?;
    let branch_sum = dennis_precorrect_branch_sum(&initial, basis, i0)?;
    let form_gap = direct.amplitude_distance(&branch_sum)?;

    let rho_a1 = partial_trace(&direct, &[SubsystemLabel::A1])?;
    let fid_a1 = crate::qcore::fidelity(&rho_a1, &psi.relabeled(vec![SubsystemLabel::A1])?)?;
    let rho_b = partial_trace(&direct, &[B])?;
    let purity_gap = (rho_b.purity() - 0.5).abs();
    Ok(form_gap.max((1.0 - fid_a1).abs()).max(purity_gap))
}

/// Sweeps `f` over `cases` seeded random single-qubit states and returns
/// the largest deviation (−∞ for zero cases).
pub fn max_deviation_over_seeds<F>(cases: usize, seed: u64, f: F) -> f64
where
    F: Fn(&StateVector) -> f64 + Sync + Send,
{
    crate::batch::max_over(cases, |k| {
        let psi = crate::qcore::random_pure_state(seed.wrapping_add(k as u64), 1);
        f(&psi)
    })
}
