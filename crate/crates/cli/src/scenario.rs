//! Line-oriented `key = value` scenario files.
//!
//! ```text
//! # teleportation scenario
//! psi = 0.6+0.0j, 0.8+0.0j    # or: psi = seed:42
//! i0 = 1                      # 1..4, or: sample
//! alice_x = 0.0
//! bob_x = 2.0
//! alice_measure_t = 1.0
//! signal_speed = 2.0
//! frames = 0.0, 0.6
//! confirmation = false
//! seed = 7
//! tolerance = 1e-10           # optional
//! confirm_t = 2.1             # optional
//! ```
//!
//! Complex numbers are written `re+imj` with both parts present. Unknown
//! keys, malformed values and violated preconditions (non-normalized ψ,
//! |v| ≥ 1, non-positive signal speed, i0 out of range) are parse errors.

use std::collections::HashMap;

use num_complex::Complex64;
use teleframe_core::observer::ScenarioGeometry;
use teleframe_core::qcore::{random_pure_state, StateVector, SubsystemLabel};
use teleframe_core::relativity::Frame;
use teleframe_core::teleport::{OutcomeRule, TeleportScenario};

/// A parse or validation failure, with the offending line when known.
#[derive(Debug)]
pub struct ScenarioError {
    pub message: String,
    pub line: Option<usize>,
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ScenarioError {}

fn err(message: impl Into<String>, line: Option<usize>) -> ScenarioError {
    ScenarioError {
        message: message.into(),
        line,
    }
}

/// How ψ was specified in the file.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiSpec {
    Amplitudes(Complex64, Complex64),
    Seed(u64),
}

/// A fully validated scenario, ready to replay.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub scenario: TeleportScenario,
    pub geometry: ScenarioGeometry,
    pub frames: Vec<Frame>,
    pub tolerance: Option<f64>,
    pub psi_spec: PsiSpec,
}

/// Parses one `re+imj` literal.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let body = t
        .strip_suffix('j')
        .ok_or_else(|| format!("complex literal `{t}` must end in `j`"))?;
    // Split at the last +/- that is not an exponent sign and not leading.
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let ch = bytes[i];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let split = split.ok_or_else(|| {
        format!("complex literal `{t}` needs both parts, e.g. `0.6+0.8j`")
    })?;
    let re: f64 = body[..split]
        .parse()
        .map_err(|_| format!("bad real part in `{t}`"))?;
    let im: f64 = body[split..]
        .parse()
        .map_err(|_| format!("bad imaginary part in `{t}`"))?;
    Ok(Complex64::new(re, im))
}

/// Formats a complex number back into the file notation.
pub fn format_complex(c: Complex64) -> String {
    format!("{}{:+}j", c.re, c.im)
}

fn parse_f64(key: &str, v: &str, line: usize) -> Result<f64, ScenarioError> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| err(format!("{key}: `{v}` is not a number"), Some(line)))?;
    if !x.is_finite() {
        return Err(err(format!("{key}: `{v}` is not finite"), Some(line)));
    }
    Ok(x)
}

fn parse_bool(key: &str, v: &str, line: usize) -> Result<bool, ScenarioError> {
    match v.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(err(
            format!("{key}: `{other}` must be true or false"),
            Some(line),
        )),
    }
}

/// Parses and validates the scenario text. `seed_override`, when given,
/// replaces the file seed.
pub fn parse_scenario(text: &str, seed_override: Option<u64>) -> Result<LoadedScenario, ScenarioError> {
    let mut values: HashMap<String, (String, usize)> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`"), Some(line_no)))?;
        let key = key.trim().to_string();
        if values.contains_key(&key) {
            return Err(err(format!("duplicate key `{key}`"), Some(line_no)));
        }
        values.insert(key, (value.trim().to_string(), line_no));
    }

    let known = [
        "psi",
        "i0",
        "alice_x",
        "bob_x",
        "alice_measure_t",
        "signal_speed",
        "frames",
        "confirmation",
        "seed",
        "tolerance",
        "confirm_t",
    ];
    for (key, (_, line_no)) in &values {
        if !known.contains(&key.as_str()) {
            return Err(err(format!("unknown key `{key}`"), Some(*line_no)));
        }
    }
    let mut take = |key: &str| values.remove(key);

    let (psi_raw, psi_line) = take("psi").ok_or_else(|| err("missing key `psi`", None))?;
    let psi_spec = if let Some(seed_str) = psi_raw.strip_prefix("seed:") {
        let s = seed_str
            .trim()
            .parse()
            .map_err(|_| err(format!("psi: bad seed `{seed_str}`"), Some(psi_line)))?;
        PsiSpec::Seed(s)
    } else {
        let parts: Vec<&str> = psi_raw.split(',').collect();
        if parts.len() != 2 {
            return Err(err(
                "psi needs two comma-separated amplitudes or `seed:N`",
                Some(psi_line),
            ));
        }
        let a0 = parse_complex(parts[0]).map_err(|m| err(m, Some(psi_line)))?;
        let a1 = parse_complex(parts[1]).map_err(|m| err(m, Some(psi_line)))?;
        PsiSpec::Amplitudes(a0, a1)
    };
    let psi = match psi_spec {
        PsiSpec::Seed(s) => random_pure_state(s, 1),
        PsiSpec::Amplitudes(a0, a1) => {
            StateVector::single_qubit(SubsystemLabel::Aux(0), a0, a1)
                .map_err(|e| err(format!("psi: {e}"), Some(psi_line)))?
        }
    };

    let (i0_raw, i0_line) = take("i0").ok_or_else(|| err("missing key `i0`", None))?;
    let outcome = if i0_raw == "sample" {
        OutcomeRule::Sampled
    } else {
        let i0: usize = i0_raw
            .parse()
            .map_err(|_| err(format!("i0: `{i0_raw}` is not 1..4 or `sample`"), Some(i0_line)))?;
        OutcomeRule::Forced(i0)
    };

    let default_geometry = ScenarioGeometry::default();
    let mut geometry = default_geometry;
    if let Some((v, n)) = take("alice_x") {
        geometry.alice_x = parse_f64("alice_x", &v, n)?;
    }
    if let Some((v, n)) = take("bob_x") {
        geometry.bob_x = parse_f64("bob_x", &v, n)?;
    }
    if let Some((v, n)) = take("alice_measure_t") {
        geometry.alice_measure_t = parse_f64("alice_measure_t", &v, n)?;
    }
    if let Some((v, n)) = take("signal_speed") {
        let w = parse_f64("signal_speed", &v, n)?;
        if !w.is_finite() || w <= 0.0 {
            return Err(err(format!("signal_speed must be positive, got {w}"), Some(n)));
        }
        geometry.signal_speed = w;
    }
    if let Some((v, n)) = take("confirm_t") {
        geometry.confirm_t = Some(parse_f64("confirm_t", &v, n)?);
    }

    let (frames_raw, frames_line) =
        take("frames").ok_or_else(|| err("missing key `frames`", None))?;
    let mut frames = Vec::new();
    for part in frames_raw.split(',') {
        let v = parse_f64("frames", part, frames_line)?;
        let frame = Frame::new(v)
            .map_err(|e| err(format!("frames: {e}"), Some(frames_line)))?;
        frames.push(frame);
    }
    if frames.is_empty() {
        return Err(err("frames must list at least one velocity", Some(frames_line)));
    }

    let confirmation = match take("confirmation") {
        Some((v, n)) => parse_bool("confirmation", &v, n)?,
        None => false,
    };
    let seed = match take("seed") {
        Some((v, n)) => v
            .parse()
            .map_err(|_| err(format!("seed: `{v}` is not an integer"), Some(n)))?,
        None => 0,
    };
    let seed = seed_override.unwrap_or(seed);
    let tolerance = match take("tolerance") {
        Some((v, n)) => {
            let t = parse_f64("tolerance", &v, n)?;
            if !t.is_finite() || t <= 0.0 {
                return Err(err(format!("tolerance must be positive, got {t}"), Some(n)));
            }
            Some(t)
        }
        None => None,
    };

    let scenario = TeleportScenario::new(psi, outcome, confirmation, seed)
        .map_err(|e| err(e.to_string(), None))?;
    // Geometry preconditions are part of parse-time validation.
    geometry
        .events(confirmation)
        .map_err(|e| err(e.to_string(), None))?;

    Ok(LoadedScenario {
        scenario,
        geometry,
        frames,
        tolerance,
        psi_spec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
# default scenario
psi = 0.6+0.0j, 0.8+0.0j
i0 = 1
alice_x = 0.0
bob_x = 2.0
alice_measure_t = 1.0
signal_speed = 2.0
frames = 0.0, 0.6
confirmation = false
seed = 7
";

    #[test]
    fn parses_the_default_scenario() {
        let loaded = parse_scenario(GOOD, None).unwrap();
        assert_eq!(loaded.frames.len(), 2);
        assert_eq!(loaded.scenario.seed, 7);
        assert_eq!(loaded.scenario.outcome, OutcomeRule::Forced(1));
        assert!((loaded.scenario.psi.amplitudes()[0].re - 0.6).abs() < 1e-15);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.6+0.8j").unwrap(), Complex64::new(0.6, 0.8));
        assert_eq!(parse_complex("-0.5-0.25j").unwrap(), Complex64::new(-0.5, -0.25));
        assert_eq!(parse_complex("1e-3+2e-4j").unwrap(), Complex64::new(1e-3, 2e-4));
        assert!(parse_complex("0.6").is_err());
        assert!(parse_complex("0.6j").is_err());
        assert_eq!(format_complex(Complex64::new(0.6, -0.8)), "0.6-0.8j");
    }

    #[test]
    fn rejects_unnormalized_psi() {
        let text = GOOD.replace("0.6+0.0j, 0.8+0.0j", "1.0+0.0j, 1.0+0.0j");
        assert!(parse_scenario(&text, None).is_err());
    }

    #[test]
    fn rejects_bad_velocity_and_speed() {
        let text = GOOD.replace("frames = 0.0, 0.6", "frames = 0.0, 1.0");
        assert!(parse_scenario(&text, None).is_err());
        let text = GOOD.replace("signal_speed = 2.0", "signal_speed = 0.0");
        assert!(parse_scenario(&text, None).is_err());
    }

    #[test]
    fn rejects_non_finite_numbers() {
        let text = GOOD.replace("alice_measure_t = 1.0", "alice_measure_t = NaN");
        assert!(parse_scenario(&text, None).is_err());
        let text = GOOD.replace("bob_x = 2.0", "bob_x = inf");
        assert!(parse_scenario(&text, None).is_err());
    }

    #[test]
    fn rejects_bad_i0_and_unknown_keys() {
        let text = GOOD.replace("i0 = 1", "i0 = 5");
        assert!(parse_scenario(&text, None).is_err());
        let text = format!("{GOOD}mystery = 3\n");
        assert!(parse_scenario(&text, None).is_err());
    }

    #[test]
    fn rejects_sampled_outcome_with_confirmation() {
        let text = GOOD
            .replace("i0 = 1", "i0 = sample")
            .replace("confirmation = false", "confirmation = true");
        assert!(parse_scenario(&text, None).is_err());
    }

    #[test]
    fn seed_override_and_psi_seed_form() {
        let text = GOOD.replace("psi = 0.6+0.0j, 0.8+0.0j", "psi = seed:42");
        let loaded = parse_scenario(&text, Some(99)).unwrap();
        assert_eq!(loaded.scenario.seed, 99);
        assert_eq!(loaded.psi_spec, PsiSpec::Seed(42));
        assert!((loaded.scenario.psi.norm() - 1.0).abs() < 1e-10);
    }
}
