//! Output records for the machine-readable format (one JSON object per
//! line, field order fixed by declaration) and helpers for the text
//! format. Field names are part of the tool's contract; see README.

use serde::Serialize;
use teleframe_core::observer::{ObserverReport, ProtocolAction, StepRecord};

/// Probabilities and deviations are printed with 12 significant digits in
/// text mode so tolerances can be audited straight from logs.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Serialize)]
pub struct MetaRecord {
    pub kind: &'static str,
    pub psi: [String; 2],
    pub i0: String,
    pub confirmation: bool,
    pub seed: u64,
    pub frames: Vec<f64>,
    pub tolerance: f64,
    pub psi_source: String,
}

#[derive(Serialize)]
pub struct CensusEntryRecord {
    pub label: String,
    pub purity: f64,
    pub fidelity_with_psi: f64,
    pub is_copy: bool,
}

#[derive(Serialize)]
pub struct CensusRecord {
    pub entries: Vec<CensusEntryRecord>,
    pub copy_count: usize,
    pub known_state_flag: bool,
}

#[derive(Serialize)]
pub struct MeasurementRecordOut {
    pub distribution: Vec<f64>,
    pub outcome: usize,
    pub outcome_name: String,
    pub probability: f64,
    pub forced: bool,
}

#[derive(Serialize)]
pub struct StepOut {
    pub kind: &'static str,
    pub frame_v: f64,
    pub step: usize,
    pub event: String,
    pub action: &'static str,
    pub t: f64,
    pub t_boosted: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measurement: Option<MeasurementRecordOut>,
    pub census: CensusRecord,
}

#[derive(Serialize)]
pub struct ParadoxRecord {
    pub kind: &'static str,
    pub frame_v: f64,
    pub event: String,
    pub predicted: f64,
    pub realized: f64,
}

#[derive(Serialize)]
pub struct CrossFrameRecord {
    pub kind: &'static str,
    pub reference_v: f64,
    pub frame_v: f64,
    pub final_state_fidelity: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct IdentityRecord {
    pub kind: &'static str,
    pub name: &'static str,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct SummaryRecord {
    pub kind: &'static str,
    pub pass: bool,
    pub failures: Vec<String>,
}

fn outcome_name(action: ProtocolAction, outcome: usize) -> String {
    match action {
        ProtocolAction::AliceBellMeasurement => format!("bell_{outcome}"),
        ProtocolAction::BobConfirmation => {
            if outcome == 0 {
                "yes".into()
            } else {
                "no".into()
            }
        }
        _ => format!("{outcome}"),
    }
}

/// Converts a replayed step into its output record. Amplitudes are
/// included only when `with_state` is set (the `run` command).
pub fn step_record(
    kind: &'static str,
    frame_v: f64,
    index: usize,
    step: &StepRecord,
    with_state: bool,
) -> StepOut {
    StepOut {
        kind,
        frame_v,
        step: index,
        event: step.event_id.clone(),
        action: step.action.name(),
        t: step.t,
        t_boosted: step.boosted_t,
        state: with_state.then(|| {
            step.state
                .amplitudes()
                .iter()
                .map(|a| [a.re, a.im])
                .collect()
        }),
        measurement: step.measurement.as_ref().map(|m| MeasurementRecordOut {
            distribution: m.distribution.clone(),
            outcome: m.record.outcome_index,
            outcome_name: outcome_name(step.action, m.record.outcome_index),
            probability: m.record.predicted_probability,
            forced: m.record.forced,
        }),
        census: CensusRecord {
            entries: step
                .census
                .entries
                .iter()
                .map(|e| CensusEntryRecord {
                    label: e.label.to_string(),
                    purity: e.purity,
                    fidelity_with_psi: e.fidelity_with_psi,
                    is_copy: e.is_copy,
                })
                .collect(),
            copy_count: step.census.copy_count,
            known_state_flag: step.census.known_state_flag,
        },
    }
}

/// One text line per step: time stamps, action, census, measurement.
pub fn step_text(index: usize, step: &StepRecord) -> String {
    let copies: Vec<String> = step
        .census
        .entries
        .iter()
        .filter(|e| e.is_copy)
        .map(|e| e.label.to_string())
        .collect();
    let mut line = format!(
        "  step {index}  t={:<6} t'={:<9.4} {:<24} copies={} [{}]{}",
        step.t,
        step.boosted_t,
        step.action.name(),
        step.census.copy_count,
        copies.join(","),
        if step.census.known_state_flag {
            " known-state"
        } else {
            ""
        },
    );
    if let Some(m) = &step.measurement {
        line.push_str(&format!(
            "  outcome={} p={}{}",
            outcome_name(step.action, m.record.outcome_index),
            sig12(m.record.predicted_probability),
            if m.record.forced { " (forced)" } else { "" },
        ));
    }
    line
}

/// Header line for one frame's report.
pub fn frame_header(report: &ObserverReport) -> String {
    format!("frame v={}", report.frame.velocity())
}
