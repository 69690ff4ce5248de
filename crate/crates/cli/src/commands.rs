//! Command implementations. Each returns the full stdout text and an
//! exit code instead of printing.

use std::fmt::Write as _;

use teleframe_core::batch;
use teleframe_core::observer::{order_events, paradox_report, replay, ObserverReport};
use teleframe_core::teleport::{
    dennis_identity_deviation, max_deviation_over_seeds, order_equivalence_deviation,
    reassembly_deviation, standard_bell_basis, BellBasis, OutcomeRule,
};
use teleframe_core::tolerance::TOL_IDENTITY;
use teleframe_core::SimError;

use crate::report::{
    frame_header, sig12, step_record, step_text, CrossFrameRecord, IdentityRecord, MetaRecord,
    ParadoxRecord, StepOut, SummaryRecord,
};
use crate::scenario::{format_complex, parse_scenario, LoadedScenario, PsiSpec};

/// Exit statuses: 0 all checks pass, 1 invariant violation or runtime
/// failure, 2 parse/validation error, 3 impossible conditioning.
pub struct CommandOutput {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(exit_code: u8, message: String) -> Self {
        Self {
            exit_code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Machine,
}

fn exit_for(e: &SimError) -> u8 {
    match e {
        SimError::ImpossibleConditioning { .. } => 3,
        _ => 1,
    }
}

fn load(path: &str, seed_override: Option<u64>) -> Result<LoadedScenario, CommandOutput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandOutput::fail(2, format!("cannot read {path}: {e}\n")))?;
    parse_scenario(&text, seed_override)
        .map_err(|e| CommandOutput::fail(2, format!("{path}: {e}\n")))
}

/// Replays every frame of the loaded scenario, in listed order.
fn replay_frames(loaded: &LoadedScenario) -> Result<Vec<ObserverReport>, SimError> {
    let basis = standard_bell_basis();
    let events = loaded.geometry.events(loaded.scenario.confirmation_enabled)?;
    let results = batch::map_indexed(loaded.frames.len(), |k| {
        let frame = loaded.frames[k];
        let ordered = order_events(&events, frame)?;
        replay(&ordered, &loaded.scenario, &basis, frame)
    });
    results.into_iter().collect()
}

fn meta_record(loaded: &LoadedScenario, tolerance: f64) -> MetaRecord {
    let psi = loaded.scenario.psi.amplitudes();
    MetaRecord {
        kind: "meta",
        psi: [format_complex(psi[0]), format_complex(psi[1])],
        i0: match loaded.scenario.outcome {
            OutcomeRule::Forced(i0) => i0.to_string(),
            OutcomeRule::Sampled => "sample".into(),
        },
        confirmation: loaded.scenario.confirmation_enabled,
        seed: loaded.scenario.seed,
        frames: loaded.frames.iter().map(|f| f.velocity()).collect(),
        tolerance,
        psi_source: match loaded.psi_spec {
            PsiSpec::Seed(s) => format!("seed:{s}"),
            PsiSpec::Amplitudes(..) => "explicit".into(),
        },
    }
}

/// Internal consistency checks on a set of frame reports. Returns the
/// failure descriptions (empty = pass) and the cross-frame records.
fn run_checks(
    reports: &[ObserverReport],
    tolerance: f64,
) -> (Vec<String>, Vec<CrossFrameRecord>) {
    let mut failures = Vec::new();
    for report in reports {
        let v = report.frame.velocity();
        for (i, step) in report.steps.iter().enumerate() {
            let norm = step.state.norm();
            if (norm - 1.0).abs() > tolerance {
                failures.push(format!(
                    "frame v={v}: step {i} state norm {norm} deviates from 1"
                ));
            }
            if let Some(m) = &step.measurement {
                let sum: f64 = m.distribution.iter().sum();
                if (sum - 1.0).abs() > tolerance {
                    failures.push(format!(
                        "frame v={v}: step {i} predicted distribution sums to {sum}"
                    ));
                }
            }
        }
    }
    let mut cross = Vec::new();
    if let Some((first, rest)) = reports.split_first() {
        for report in rest {
            let fidelity = first
                .final_state()
                .overlap_sq(report.final_state())
                .unwrap_or(0.0);
            let pass = fidelity >= 1.0 - tolerance;
            if !pass {
                failures.push(format!(
                    "final states of v={} and v={} disagree (fidelity {fidelity})",
                    first.frame.velocity(),
                    report.frame.velocity()
                ));
            }
            cross.push(CrossFrameRecord {
                kind: "cross_frame",
                reference_v: first.frame.velocity(),
                frame_v: report.frame.velocity(),
                final_state_fidelity: fidelity,
                pass,
            });
        }
    }
    (failures, cross)
}

fn json_line(out: &mut String, value: &impl serde::Serialize) {
    out.push_str(&serde_json::to_string(value).expect("serializable record"));
    out.push('\n');
}

/// `run <file>`: replay every listed frame, report each step, compare
/// final states across frames, and verify the step-level invariants.
pub fn cmd_run(
    path: &str,
    format: OutputFormat,
    seed_override: Option<u64>,
    tol_override: Option<f64>,
) -> CommandOutput {
    let loaded = match load(path, seed_override) {
        Ok(l) => l,
        Err(out) => return out,
    };
    let tolerance = tol_override.or(loaded.tolerance).unwrap_or(TOL_IDENTITY);
    let reports = match replay_frames(&loaded) {
        Ok(r) => r,
        Err(e) => return CommandOutput::fail(exit_for(&e), format!("{e}\n")),
    };
    let (failures, cross) = run_checks(&reports, tolerance);
    let pass = failures.is_empty();

    let mut out = String::new();
    match format {
        OutputFormat::Machine => {
            json_line(&mut out, &meta_record(&loaded, tolerance));
            for report in &reports {
                let v = report.frame.velocity();
                for (i, step) in report.steps.iter().enumerate() {
                    let record: StepOut = step_record("step", v, i, step, true);
                    json_line(&mut out, &record);
                }
                for d in paradox_report(report) {
                    json_line(
                        &mut out,
                        &ParadoxRecord {
                            kind: "paradox",
                            frame_v: v,
                            event: d.event_id,
                            predicted: d.predicted_probability,
                            realized: d.realized_frequency,
                        },
                    );
                }
            }
            for record in &cross {
                json_line(&mut out, record);
            }
            json_line(
                &mut out,
                &SummaryRecord {
                    kind: "summary",
                    pass,
                    failures: failures.clone(),
                },
            );
        }
        OutputFormat::Text => {
            let psi = loaded.scenario.psi.amplitudes();
            writeln!(
                out,
                "scenario {path}: psi = {}, {}  i0 = {}  confirmation = {}  seed = {}",
                format_complex(psi[0]),
                format_complex(psi[1]),
                match loaded.scenario.outcome {
                    OutcomeRule::Forced(i0) => i0.to_string(),
                    OutcomeRule::Sampled => "sample".into(),
                },
                loaded.scenario.confirmation_enabled,
                loaded.scenario.seed,
            )
            .unwrap();
            for report in &reports {
                writeln!(out, "{}", frame_header(report)).unwrap();
                for (i, step) in report.steps.iter().enumerate() {
                    writeln!(out, "{}", step_text(i, step)).unwrap();
                }
                for d in paradox_report(report) {
                    writeln!(
                        out,
                        "  paradox: {} predicted {} but the conditioned history realizes it always",
                        d.event_id,
                        sig12(d.predicted_probability),
                    )
                    .unwrap();
                }
            }
            for record in &cross {
                writeln!(
                    out,
                    "cross-frame: v={} vs v={} final fidelity {}{}",
                    record.frame_v,
                    record.reference_v,
                    sig12(record.final_state_fidelity),
                    if record.pass { "" } else { "  FAIL" },
                )
                .unwrap();
            }
            for failure in &failures {
                writeln!(out, "FAIL: {failure}").unwrap();
            }
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
        }
    }
    CommandOutput {
        exit_code: u8::from(!pass),
        stdout: out,
        stderr: String::new(),
    }
}

/// `check-identities`: sweep the protocol identities over seeded random
/// states and report the worst deviation of each.
pub fn cmd_check_identities(
    cases: usize,
    seed: u64,
    format: OutputFormat,
    tol_override: Option<f64>,
) -> CommandOutput {
    cmd_check_identities_with_basis(&standard_bell_basis(), cases, seed, format, tol_override)
}

/// Test hook: same suites against an arbitrary (possibly corrupted)
/// basis. A mismatched state/correction pairing fails the reassembly
/// identity by construction.
pub fn cmd_check_identities_with_basis(
    basis: &BellBasis,
    cases: usize,
    seed: u64,
    format: OutputFormat,
    tol_override: Option<f64>,
) -> CommandOutput {
    let tolerance = tol_override.unwrap_or(TOL_IDENTITY);
    let sweep = |f: &(dyn Fn(&teleframe_core::StateVector) -> f64 + Sync)| {
        (cases > 0).then(|| max_deviation_over_seeds(cases, seed, f))
    };
    let suites: Vec<(&'static str, Option<f64>)> = vec![
        (
            "reassembly",
            sweep(&|psi| reassembly_deviation(basis, psi).expect("valid psi")),
        ),
        (
            "order_equivalence",
            sweep(&|psi| {
                (1..=4)
                    .map(|i0| order_equivalence_deviation(basis, psi, i0).expect("valid psi"))
                    .fold(0.0, f64::max)
            }),
        ),
        (
            "dennis_identity",
            sweep(&|psi| {
                (1..=4)
                    .map(|i0| dennis_identity_deviation(basis, psi, i0).expect("valid psi"))
                    .fold(0.0, f64::max)
            }),
        ),
    ];

    let mut pass = true;
    let mut out = String::new();
    let mut records = Vec::new();
    for (name, max_deviation) in &suites {
        let suite_pass = max_deviation.is_none_or(|d| d <= tolerance);
        pass &= suite_pass;
        records.push(IdentityRecord {
            kind: "identity",
            name,
            cases,
            max_deviation: *max_deviation,
            tolerance,
            pass: suite_pass,
        });
    }
    match format {
        OutputFormat::Machine => {
            for record in &records {
                json_line(&mut out, record);
            }
            json_line(
                &mut out,
                &SummaryRecord {
                    kind: "summary",
                    pass,
                    failures: records
                        .iter()
                        .filter(|r| !r.pass)
                        .map(|r| r.name.to_string())
                        .collect(),
                },
            );
        }
        OutputFormat::Text => {
            if cases == 0 {
                writeln!(out, "identity suites: 0 cases, vacuous pass").unwrap();
            }
            for record in &records {
                match record.max_deviation {
                    Some(d) => writeln!(
                        out,
                        "{:<18} cases={:<5} max deviation {}  [{}]",
                        record.name,
                        record.cases,
                        sig12(d),
                        if record.pass { "pass" } else { "FAIL" },
                    )
                    .unwrap(),
                    None => writeln!(
                        out,
                        "{:<18} cases=0     max deviation n/a  [pass]",
                        record.name,
                    )
                    .unwrap(),
                }
            }
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
        }
    }
    CommandOutput {
        exit_code: u8::from(!pass),
        stdout: out,
        stderr: String::new(),
    }
}

/// `census <file>`: the per-step copy audit for every frame.
pub fn cmd_census(
    path: &str,
    format: OutputFormat,
    seed_override: Option<u64>,
) -> CommandOutput {
    let loaded = match load(path, seed_override) {
        Ok(l) => l,
        Err(out) => return out,
    };
    let reports = match replay_frames(&loaded) {
        Ok(r) => r,
        Err(e) => return CommandOutput::fail(exit_for(&e), format!("{e}\n")),
    };
    let mut out = String::new();
    match format {
        OutputFormat::Machine => {
            for report in &reports {
                let v = report.frame.velocity();
                for (i, step) in report.steps.iter().enumerate() {
                    json_line(&mut out, &step_record("census", v, i, step, false));
                }
            }
        }
        OutputFormat::Text => {
            for report in &reports {
                let trajectory: Vec<String> = report
                    .census_trajectory()
                    .iter()
                    .map(usize::to_string)
                    .collect();
                writeln!(
                    out,
                    "{}  trajectory [{}]",
                    frame_header(report),
                    trajectory.join(", ")
                )
                .unwrap();
                for (i, step) in report.steps.iter().enumerate() {
                    let detail: Vec<String> = step
                        .census
                        .entries
                        .iter()
                        .map(|e| {
                            format!(
                                "{}: purity={:.6} fidelity={:.6}{}",
                                e.label,
                                e.purity,
                                e.fidelity_with_psi,
                                if e.is_copy { " copy" } else { "" },
                            )
                        })
                        .collect();
                    writeln!(
                        out,
                        "  step {i} {:<24} {}",
                        step.action.name(),
                        detail.join("  ")
                    )
                    .unwrap();
                }
            }
        }
    }
    CommandOutput::ok(out)
}

/// `paradox <file>`: predicted-versus-conditioned discrepancies per frame.
pub fn cmd_paradox(
    path: &str,
    format: OutputFormat,
    seed_override: Option<u64>,
) -> CommandOutput {
    let loaded = match load(path, seed_override) {
        Ok(l) => l,
        Err(out) => return out,
    };
    let reports = match replay_frames(&loaded) {
        Ok(r) => r,
        Err(e) => return CommandOutput::fail(exit_for(&e), format!("{e}\n")),
    };
    let mut out = String::new();
    match format {
        OutputFormat::Machine => {
            for report in &reports {
                for d in paradox_report(report) {
                    json_line(
                        &mut out,
                        &ParadoxRecord {
                            kind: "paradox",
                            frame_v: report.frame.velocity(),
                            event: d.event_id,
                            predicted: d.predicted_probability,
                            realized: d.realized_frequency,
                        },
                    );
                }
            }
        }
        OutputFormat::Text => {
            for report in &reports {
                let discrepancies = paradox_report(report);
                writeln!(
                    out,
                    "{}  {} discrepancy(ies)",
                    frame_header(report),
                    discrepancies.len()
                )
                .unwrap();
                for d in discrepancies {
                    writeln!(
                        out,
                        "  {}: predicted {} realized {}",
                        d.event_id,
                        sig12(d.predicted_probability),
                        sig12(d.realized_frequency),
                    )
                    .unwrap();
                }
            }
        }
    }
    CommandOutput::ok(out)
}
