//! Frame-dependent replay of the protocol.
//!
//! An observer orders the spacetime-stamped protocol steps by boosted
//! time and assigns quantum states step by step, applying each operation
//! as they see it performed. An observer at rest sees measure → correct;
//! an observer boosted past the reversal threshold sees correct →
//! measure, which is where the pre-correction state assignment comes
//! from. After every step a copy census counts how many subsystems hold
//! the teleported state.

use crate::error::SimError;
use crate::qcore::{
    fidelity, partial_trace, sample_outcome, MeasurementRecord, StateVector, SubsystemLabel,
};
use crate::relativity::{boost, signal_arrival, Frame, SignalChannel, SpacetimeEvent};
use crate::teleport::{
    alice_measure, build_initial, confirmation_measure, BellBasis, OutcomeRule,
    TeleportScenario,
};
use crate::tolerance::{CENSUS_EPS, TOL_EVENT_TIE, TOL_IDENTITY};
use crate::Result;

use SubsystemLabel::B;

/// What happens at a protocol event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProtocolAction {
    PrepareInitial,
    AliceBellMeasurement,
    BobCorrection,
    BobConfirmation,
}

impl ProtocolAction {
    pub fn name(&self) -> &'static str {
        match self {
            ProtocolAction::PrepareInitial => "prepare_initial",
            ProtocolAction::AliceBellMeasurement => "alice_bell_measurement",
            ProtocolAction::BobCorrection => "bob_correction",
            ProtocolAction::BobConfirmation => "bob_confirmation",
        }
    }
}

/// A spacetime-stamped protocol step.
#[derive(Debug, Clone)]
pub struct ProtocolEvent {
    pub event: SpacetimeEvent,
    pub action: ProtocolAction,
}

/// Where and when the protocol steps happen (rest-frame coordinates).
/// The default is the smallest integer geometry exhibiting the reversal:
/// Alice at x = 0 measuring at t = 1, Bob at x = 2, signal speed 2, so
/// the correction lands at t = 2 and the reversal threshold is v* = 0.5.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioGeometry {
    pub alice_x: f64,
    pub bob_x: f64,
    pub alice_measure_t: f64,
    pub signal_speed: f64,
    /// Confirmation time at Bob's position; defaults to shortly after the
    /// correction arrives (correction time + 0.1).
    pub confirm_t: Option<f64>,
}

impl Default for ScenarioGeometry {
    fn default() -> Self {
        Self {
            alice_x: 0.0,
            bob_x: 2.0,
            alice_measure_t: 1.0,
            signal_speed: 2.0,
            confirm_t: None,
        }
    }
}

impl ScenarioGeometry {
    /// The protocol events in rest-frame coordinates: preparation at
    /// t = 0 on Alice's side, her measurement, the correction when the
    /// signal reaches Bob, and optionally his confirmation.
    pub fn events(&self, confirmation: bool) -> Result<Vec<ProtocolEvent>> {
        let channel = SignalChannel::new(self.signal_speed)?;
        let prepare = SpacetimeEvent::new("prepare", 0.0, self.alice_x);
        let alice = SpacetimeEvent::new("alice_measurement", self.alice_measure_t, self.alice_x);
        if self.alice_measure_t <= 0.0 {
            return Err(SimError::InvalidScenario(
                "the measurement must happen after preparation (t > 0)".into(),
            ));
        }
        let mut correction = signal_arrival(&alice, self.bob_x, channel);
        correction.id = "bob_correction".into();
        let mut events = vec![
            ProtocolEvent {
                event: prepare,
                action: ProtocolAction::PrepareInitial,
            },
            ProtocolEvent {
                event: alice,
                action: ProtocolAction::AliceBellMeasurement,
            },
        ];
        let correction_t = correction.t;
        events.push(ProtocolEvent {
            event: correction,
            action: ProtocolAction::BobCorrection,
        });
        if confirmation {
            let t = self.confirm_t.unwrap_or(correction_t + 0.1);
            if t <= correction_t {
                return Err(SimError::InvalidScenario(format!(
                    "confirmation at t = {t} would precede the correction at t = {correction_t}"
                )));
            }
            events.push(ProtocolEvent {
                event: SpacetimeEvent::new("bob_confirmation", t, self.bob_x),
                action: ProtocolAction::BobConfirmation,
            });
        }
        Ok(events)
    }

    /// The event pair whose order is frame-dependent.
    pub fn reversal_threshold(&self) -> Result<Option<f64>> {
        let events = self.events(false)?;
        let alice = &events[1].event;
        let correction = &events[2].event;
        crate::relativity::reversal_frames(alice, correction)
    }
}

/// Per-subsystem view of "who holds the teleported state".
#[derive(Debug, Clone, PartialEq)]
pub struct CensusEntry {
    pub label: SubsystemLabel,
    pub fidelity_with_psi: f64,
    pub purity: f64,
    pub is_copy: bool,
}

/// The copy audit after one step: a subsystem counts as a copy when its
/// reduced state is pure AND equal to ψ, both within 1e-8.
#[derive(Debug, Clone, PartialEq)]
pub struct CopyCensus {
    pub entries: Vec<CensusEntry>,
    pub copy_count: usize,
    /// Set once a confirmation device prepared by a ψ-knowing party has
    /// acted; a second copy behind this flag is cloning of a known state.
    pub known_state_flag: bool,
}

/// Runs the census on every single-qubit subsystem of `s`.
pub fn copy_census(s: &StateVector, psi: &StateVector) -> Result<CopyCensus> {
    for required in [SubsystemLabel::A1, SubsystemLabel::A, B] {
        if !s.labels().contains(&required) {
            return Err(SimError::UnknownLabel(required));
        }
    }
    let mut entries = Vec::with_capacity(s.num_qubits());
    for &label in s.labels() {
        let rho = partial_trace(s, &[label])?;
        let fid = fidelity(&rho, &psi.relabeled(vec![label])?)?;
        let purity = rho.purity();
        let is_copy = purity >= 1.0 - CENSUS_EPS && fid >= 1.0 - CENSUS_EPS;
        entries.push(CensusEntry {
            label,
            fidelity_with_psi: fid,
            purity,
            is_copy,
        });
    }
    let copy_count = entries.iter().filter(|e| e.is_copy).count();
    Ok(CopyCensus {
        entries,
        copy_count,
        known_state_flag: false,
    })
}

/// One replayed step: the event, its boosted time, the state the
/// observer assigns after the step, the measurement bookkeeping when the
/// step was a measurement, and the copy census.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub event_id: String,
    pub action: ProtocolAction,
    pub t: f64,
    pub boosted_t: f64,
    pub state: StateVector,
    pub measurement: Option<MeasurementStep>,
    pub census: CopyCensus,
}

/// Measurement bookkeeping: the record plus the full predicted
/// distribution on the observer's pre-measurement state.
#[derive(Debug, Clone)]
pub struct MeasurementStep {
    pub distribution: Vec<f64>,
    pub record: MeasurementRecord,
}

/// A full per-frame replay.
#[derive(Debug, Clone)]
pub struct ObserverReport {
    pub frame: Frame,
    pub steps: Vec<StepRecord>,
    /// The Bell outcome realized in this replay (1..=4).
    pub i0: usize,
}

impl ObserverReport {
    pub fn final_state(&self) -> &StateVector {
        &self.steps.last().expect("replay has steps").state
    }

    pub fn census_trajectory(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.census.copy_count).collect()
    }
}

/// A predicted-versus-realized gap at a conditioned measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub event_id: String,
    pub predicted_probability: f64,
    pub realized_frequency: f64,
}

/// Sorts the protocol events by boosted time. Ties within 1e-12 make the
/// ordering ill-defined and are a scenario error.
pub fn order_events(events: &[ProtocolEvent], f: Frame) -> Result<Vec<ProtocolEvent>> {
    let mut stamped: Vec<(f64, ProtocolEvent)> = events
        .iter()
        .map(|pe| (boost(&pe.event, f).t, pe.clone()))
        .collect();
    stamped.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite times"));
    for pair in stamped.windows(2) {
        if (pair[1].0 - pair[0].0).abs() <= TOL_EVENT_TIE {
            return Err(SimError::EventTimeTie {
                a: pair[0].1.event.id.clone(),
                b: pair[1].1.event.id.clone(),
                t: pair[0].0,
            });
        }
    }
    Ok(stamped.into_iter().map(|(_, pe)| pe).collect())
}

/// Replays the ordered events as the observer in `frame` would, starting
/// from the joint initial state and applying each action to the
/// currently assigned state. Measurements are conditioned per the
/// scenario; the correction applies U†ᵢ₀ to whatever the observer
/// currently assigns, which reproduces the post-measurement update in
/// measure-first order and the pre-correction assignment in
/// correct-first order.
pub fn replay(
    ordered: &[ProtocolEvent],
    scenario: &TeleportScenario,
    basis: &BellBasis,
    frame: Frame,
) -> Result<ObserverReport> {
    if ordered.iter().filter(|e| e.action == ProtocolAction::PrepareInitial).count() != 1 {
        return Err(SimError::InvalidScenario(
            "a replay needs exactly one preparation event".into(),
        ));
    }
    if ordered.first().map(|e| e.action) != Some(ProtocolAction::PrepareInitial) {
        return Err(SimError::InvalidScenario(
            "the preparation must precede every other event in this frame".into(),
        ));
    }

    let mut state = build_initial(&scenario.psi, basis)?;
    // The outcome the conditioned history realizes. A sampled scenario
    // draws it from the uniform Bell distribution with the scenario seed;
    // the same draw is reproduced wherever the measurement lands in this
    // frame's order, so every frame replays the same history.
    let realized_i0 = match scenario.outcome {
        OutcomeRule::Forced(i0) => i0,
        OutcomeRule::Sampled => sample_outcome(scenario.seed, &[0.25; 4]) + 1,
    };
    let forced = matches!(scenario.outcome, OutcomeRule::Forced(_));

    let mut steps = Vec::with_capacity(ordered.len());
    let mut known_state = false;
    for pe in ordered {
        let mut measurement = None;
        match pe.action {
            ProtocolAction::PrepareInitial => {}
            ProtocolAction::AliceBellMeasurement => {
                let distribution = crate::teleport::bell_distribution(&state, basis)?;
                let (record, collapsed) = alice_measure(
                    &state,
                    basis,
                    forced.then_some(realized_i0),
                    Some(scenario.seed),
                )?;
                if !forced && record.outcome_index != realized_i0 {
                    return Err(SimError::InvalidScenario(format!(
                        "sampled outcome {} disagrees with the replayed history {}",
                        record.outcome_index, realized_i0
                    )));
                }
                state = collapsed;
                measurement = Some(MeasurementStep {
                    distribution,
                    record,
                });
            }
            ProtocolAction::BobCorrection => {
                let u_dag = basis.correction(realized_i0)?.dagger();
                state = crate::qcore::apply(&u_dag, &[B], &state)?;
            }
            ProtocolAction::BobConfirmation => {
                let projectors = crate::teleport::confirmation_projectors(&scenario.psi)?;
                let distribution =
                    crate::qcore::born_distribution(&state, &projectors, &[B])?;
                let (record, collapsed) =
                    confirmation_measure(&state, &scenario.psi, true, Some(scenario.seed))?;
                state = collapsed;
                known_state = true;
                measurement = Some(MeasurementStep {
                    distribution,
                    record,
                });
            }
        }
        let mut census = copy_census(&state, &scenario.psi)?;
        census.known_state_flag = known_state;
        steps.push(StepRecord {
            event_id: pe.event.id.clone(),
            action: pe.action,
            t: pe.event.t,
            boosted_t: boost(&pe.event, frame).t,
            state: state.clone(),
            measurement,
            census,
        });
    }
    Ok(ObserverReport {
        frame,
        steps,
        i0: realized_i0,
    })
}

/// Every conditioned measurement whose predicted probability fell short
/// of certainty: the observer predicted `p`, the conditioned history
/// realizes the outcome with frequency 1.
pub fn paradox_report(r: &ObserverReport) -> Vec<Discrepancy> {
    r.steps
        .iter()
        .filter_map(|step| {
            let m = step.measurement.as_ref()?;
            if m.record.forced && m.record.predicted_probability < 1.0 - TOL_IDENTITY {
                Some(Discrepancy {
                    event_id: step.event_id.clone(),
                    predicted_probability: m.record.predicted_probability,
                    realized_frequency: 1.0,
                })
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::random_pure_state;
    use crate::teleport::standard_bell_basis;

    fn scenario(i0: usize, confirmation: bool, seed: u64) -> TeleportScenario {
        TeleportScenario::new(
            random_pure_state(seed, 1),
            OutcomeRule::Forced(i0),
            confirmation,
            seed,
        )
        .unwrap()
    }

    fn ordered_for(v: f64, confirmation: bool) -> Vec<ProtocolEvent> {
        let events = ScenarioGeometry::default().events(confirmation).unwrap();
        order_events(&events, Frame::new(v).unwrap()).unwrap()
    }

    #[test]
    fn rest_frame_order_is_measure_then_correct() {
        let ordered = ordered_for(0.0, false);
        let actions: Vec<_> = ordered.iter().map(|e| e.action).collect();
        assert_eq!(
            actions,
            vec![
                ProtocolAction::PrepareInitial,
                ProtocolAction::AliceBellMeasurement,
                ProtocolAction::BobCorrection,
            ]
        );
    }

    #[test]
    fn boosted_frame_reverses_measure_and_correct() {
        let ordered = ordered_for(0.6, false);
        let actions: Vec<_> = ordered.iter().map(|e| e.action).collect();
        assert_eq!(
            actions,
            vec![
                ProtocolAction::PrepareInitial,
                ProtocolAction::BobCorrection,
                ProtocolAction::AliceBellMeasurement,
            ]
        );
    }

    #[test]
    fn threshold_velocity_is_a_tie_error() {
        let events = ScenarioGeometry::default().events(false).unwrap();
        let e = order_events(&events, Frame::new(0.5).unwrap());
        assert!(matches!(e, Err(SimError::EventTimeTie { .. })));
    }

    #[test]
    fn default_geometry_threshold() {
        let v_star = ScenarioGeometry::default()
            .reversal_threshold()
            .unwrap()
            .unwrap();
        assert!((v_star - 0.5).abs() < 1e-12);
    }

    #[test]
    fn confirmation_sits_between_correction_and_measurement_for_dennis() {
        let ordered = ordered_for(0.6, true);
        let actions: Vec<_> = ordered.iter().map(|e| e.action).collect();
        assert_eq!(
            actions,
            vec![
                ProtocolAction::PrepareInitial,
                ProtocolAction::BobCorrection,
                ProtocolAction::BobConfirmation,
                ProtocolAction::AliceBellMeasurement,
            ]
        );
    }

    #[test]
    fn census_on_initial_state() {
        let basis = standard_bell_basis();
        let psi = random_pure_state(2, 1);
        let s = crate::teleport::build_initial(&psi, &basis).unwrap();
        let census = copy_census(&s, &psi).unwrap();
        assert_eq!(census.copy_count, 1);
        assert!(census.entries[0].is_copy); // A1
        assert!(!census.entries[1].is_copy); // A
        assert!(!census.entries[2].is_copy); // B
    }

    #[test]
    fn carol_replay_with_identity_outcome() {
        let basis = standard_bell_basis();
        let sc = scenario(1, false, 4);
        let report = replay(&ordered_for(0.0, false), &sc, &basis, Frame::rest()).unwrap();
        assert_eq!(report.census_trajectory(), vec![1, 1, 1]);
        let m = report.steps[1].measurement.as_ref().unwrap();
        assert!((m.record.predicted_probability - 0.25).abs() < 1e-12);
        let sum: f64 = m.distribution.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dennis_replay_keeps_single_copy_for_all_outcomes() {
        let basis = standard_bell_basis();
        for i0 in 1..=4 {
            let sc = scenario(i0, false, 21 + i0 as u64);
            let report =
                replay(&ordered_for(0.6, false), &sc, &basis, Frame::new(0.6).unwrap()).unwrap();
            assert_eq!(report.census_trajectory(), vec![1, 1, 1], "i0 = {i0}");
            // After the correction the observer assigns ψ to A1 alone.
            assert!(report.steps[1].census.entries[0].is_copy);
        }
    }

    #[test]
    fn paradox_report_in_rest_frame() {
        let basis = standard_bell_basis();
        let sc = scenario(2, false, 8);
        let report = replay(&ordered_for(0.0, false), &sc, &basis, Frame::rest()).unwrap();
        let discrepancies = paradox_report(&report);
        assert_eq!(discrepancies.len(), 1);
        assert!((discrepancies[0].predicted_probability - 0.25).abs() < 1e-12);
        assert_eq!(discrepancies[0].realized_frequency, 1.0);
    }

    #[test]
    fn sampled_scenario_yields_empty_paradox_report() {
        let basis = standard_bell_basis();
        let sc = TeleportScenario::new(random_pure_state(6, 1), OutcomeRule::Sampled, false, 6)
            .unwrap();
        let carol = replay(&ordered_for(0.0, false), &sc, &basis, Frame::rest()).unwrap();
        assert!(paradox_report(&carol).is_empty());
        let dennis =
            replay(&ordered_for(0.6, false), &sc, &basis, Frame::new(0.6).unwrap()).unwrap();
        assert!(paradox_report(&dennis).is_empty());
        // Both frames replay the same sampled history.
        assert_eq!(carol.i0, dennis.i0);
        assert!(carol.final_state().overlap_sq(dennis.final_state()).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn confirmation_census_reports_two_known_copies() {
        let basis = standard_bell_basis();
        let sc = scenario(2, true, 14);
        let report =
            replay(&ordered_for(0.6, true), &sc, &basis, Frame::new(0.6).unwrap()).unwrap();
        assert_eq!(report.census_trajectory(), vec![1, 1, 2, 1]);
        let confirm_step = &report.steps[2];
        assert_eq!(confirm_step.census.copy_count, 2);
        assert!(confirm_step.census.known_state_flag);
        assert!(!report.steps[1].census.known_state_flag);
        let m = confirm_step.measurement.as_ref().unwrap();
        assert!((m.record.predicted_probability - 0.5).abs() < 1e-10);
    }
}
