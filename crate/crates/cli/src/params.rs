//! Raw `key = value` parameters and their validation into run configurations.
//!
//! Values come from an optional config file and from command-line flags, the
//! flags taking precedence. Every problem is collected before reporting.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use bloch_rwa::metrics::RwaReference;
use bloch_rwa::{ConfigErrors, QuantumConfig, SimConfig};

use crate::scenario::Scenario;

pub type RawParams = BTreeMap<String, String>;

pub const KNOWN_KEYS: &[&str] = &[
    "omega",
    "detuning",
    "theta0",
    "alpha",
    "n-max",
    "lambda",
    "t-end",
    "samples-per-period",
    "rwa",
    "model",
    "reference",
    "omegas",
];

pub const DEFAULT_SCAN_OMEGAS: [f64; 5] = [10.0, 20.0, 40.0, 80.0, 160.0];

/// `n_max` → `n-max`, `T_End` → `t-end`.
pub fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('_', "-")
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// values may be quoted.
pub fn parse_config_text(text: &str) -> Result<RawParams, ConfigErrors> {
    let mut out = RawParams::new();
    let mut errs = ConfigErrors::default();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => {
                let v = v.trim().trim_matches('"').trim_matches('\'');
                out.insert(normalize_key(k), v.to_string());
            }
            _ => errs.push("config", format!("line {}: expected `key = value`, got `{line}`", no + 1)),
        }
    }
    errs.into_result().map(|_| out)
}

/// Overlays `flags` on `file`.
pub fn merge(file: RawParams, flags: RawParams) -> RawParams {
    let mut out = file;
    out.extend(flags);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Classical,
    Quantum,
}

/// Validated parameters for one scenario run.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub sim: SimConfig,
    pub quantum: QuantumConfig,
    pub rwa: bool,
    pub model: Model,
    pub reference: RwaReference,
    pub omegas: Vec<f64>,
}

struct Reader<'a> {
    raw: &'a RawParams,
    errs: ConfigErrors,
}

impl Reader<'_> {
    fn real(&mut self, key: &str) -> Option<f64> {
        let v = self.raw.get(key)?;
        match v.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Some(x),
            _ => {
                self.errs.push(key, format!("{key} must be a finite number, got `{v}`"));
                None
            }
        }
    }

    fn count(&mut self, key: &str) -> Option<usize> {
        let v = self.raw.get(key)?;
        match v.trim().parse::<usize>() {
            Ok(x) => Some(x),
            Err(_) => {
                self.errs.push(key, format!("{key} must be a non-negative integer, got `{v}`"));
                None
            }
        }
    }

    fn flag(&mut self, key: &str) -> bool {
        match self.raw.get(key).map(|v| v.trim().to_ascii_lowercase()) {
            None => false,
            Some(v) if v == "true" || v == "1" || v == "yes" => true,
            Some(v) if v == "false" || v == "0" || v == "no" => false,
            Some(v) => {
                self.errs.push(key, format!("{key} must be true or false, got `{v}`"));
                false
            }
        }
    }

    fn list(&mut self, key: &str) -> Option<Vec<f64>> {
        let v = self.raw.get(key)?;
        let parsed: Result<Vec<f64>, _> = v.split(',').map(|s| s.trim().parse::<f64>()).collect();
        match parsed {
            Ok(xs) if !xs.is_empty() && xs.iter().all(|x| x.is_finite() && *x > 0.0) => {
                if xs.windows(2).all(|w| w[1] > w[0]) {
                    Some(xs)
                } else {
                    self.errs.push(key, format!("{key} must be strictly increasing"));
                    None
                }
            }
            _ => {
                self.errs.push(key, format!("{key} must be a comma-separated list of positive numbers, got `{v}`"));
                None
            }
        }
    }
}

/// Checks every key and value, builds the configurations the scenario needs
/// and validates them, reporting all problems together.
pub fn validate_config(raw: &RawParams, scenario: Scenario) -> Result<Resolved, ConfigErrors> {
    let mut r = Reader { raw, errs: ConfigErrors::default() };
    for key in raw.keys() {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            r.errs.push(key.clone(), format!("unknown parameter `{key}`"));
        }
    }
    let defaults = SimConfig::default();
    let omega = r.real("omega").unwrap_or(defaults.omega);
    let detuning = r.real("detuning").unwrap_or(defaults.detuning);
    let theta0 = r.real("theta0").unwrap_or(defaults.theta0);
    let t_end = r.real("t-end").unwrap_or(defaults.t_end);
    let samples = r.count("samples-per-period").unwrap_or(defaults.samples_per_drive_period);
    let alpha = r.real("alpha");
    let n_max = r.count("n-max");
    let lambda = r.real("lambda");
    let rwa = r.flag("rwa");
    let model = match raw.get("model").map(|m| m.trim().to_ascii_lowercase()) {
        None => scenario.default_model(),
        Some(m) if m == "classical" => Model::Classical,
        Some(m) if m == "quantum" => Model::Quantum,
        Some(m) => {
            r.errs.push("model", format!("model must be `classical` or `quantum`, got `{m}`"));
            scenario.default_model()
        }
    };
    let reference = match raw.get("reference").map(|m| m.trim().to_ascii_lowercase()) {
        None => RwaReference::default(),
        Some(m) if m == "jc" || m == "jaynes-cummings" => RwaReference::JaynesCummings,
        Some(m) if m == "classical-rwa" => RwaReference::ClassicalRwa,
        Some(m) => {
            r.errs.push("reference", format!("reference must be `jaynes-cummings` or `classical-rwa`, got `{m}`"));
            RwaReference::default()
        }
    };
    let omegas = r.list("omegas").unwrap_or_else(|| DEFAULT_SCAN_OMEGAS.to_vec());
    let mut errs = r.errs;

    let sim = SimConfig { omega, detuning, theta0, t_end, samples_per_drive_period: samples };
    let quantum = QuantumConfig {
        alpha: alpha.unwrap_or(1.0),
        theta0,
        omega,
        n_max,
        lambda,
        t_end,
        samples_per_drive_period: samples,
    };

    let uses_quantum = match scenario {
        Scenario::QuantumPath => true,
        Scenario::Curvature | Scenario::Arclength | Scenario::DeltaScan => model == Model::Quantum,
        _ => false,
    };
    let resonant_only = uses_quantum || matches!(scenario, Scenario::RotationProfile | Scenario::Cusps | Scenario::Table1);
    if resonant_only && detuning != 0.0 {
        errs.push("detuning", format!("{} is defined at resonance only (detuning = 0)", scenario.name()));
    }
    match scenario {
        Scenario::Table1 => {
            if omega.is_nan() || omega <= 0.0 {
                errs.push("omega", "omega must be positive");
            }
        }
        Scenario::DeltaScan => {
            // each scan point runs with its own ω over τ = π
            let probe_omega = omegas.first().copied().unwrap_or(1.0);
            if uses_quantum {
                let q = QuantumConfig { omega: probe_omega, t_end: PI, ..quantum };
                merge_errors(&mut errs, q.validate());
            } else {
                let s = SimConfig { omega: probe_omega, t_end: PI, ..sim };
                merge_errors(&mut errs, s.validate());
            }
        }
        _ if uses_quantum => merge_errors(&mut errs, quantum.validate()),
        _ => merge_errors(&mut errs, sim.validate()),
    }
    errs.into_result().map(|_| Resolved { sim, quantum, rwa, model, reference, omegas })
}

fn merge_errors(into: &mut ConfigErrors, res: Result<(), ConfigErrors>) {
    if let Err(e) = res {
        for issue in e.issues() {
            if !into.mentions(&issue.key) {
                into.push(issue.key.clone(), issue.message.clone());
            }
        }
    }
}
