//! Scenario runner behind the `bloch-rwa` command.
//!
//! A [`ScenarioSpec`] names a scenario, carries raw `key = value` parameters
//! and says where to write. [`run_scenario`] validates the parameters,
//! computes the table, writes it as CSV or JSON, then reads the output back
//! and audits it.

pub mod audit;
pub mod error;
pub mod output;
pub mod params;
pub mod scenario;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

pub use error::CliError;
pub use output::{Format, Table};
pub use params::{validate_config, RawParams};
pub use scenario::Scenario;

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub params: RawParams,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub rows: usize,
    pub output: Option<PathBuf>,
}

/// Reads a `key = value` config file.
pub fn load_config_file(path: &std::path::Path) -> Result<RawParams, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        let mut c = bloch_rwa::ConfigErrors::default();
        c.push("config", format!("cannot read {}: {e}", path.display()));
        CliError::Validation(c)
    })?;
    Ok(params::parse_config_text(&text)?)
}

/// Validates, computes, writes and audits one scenario.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<RunSummary, CliError> {
    let resolved = validate_config(&spec.params, spec.scenario)?;
    let (table, failures) = scenario::compute(spec.scenario, &resolved)?;
    let text = table.render(spec.format);

    let target = match &spec.output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Output { path: path.clone(), message: e.to_string() })?;
            path.display().to_string()
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Output { path: "-".into(), message: e.to_string() })?;
            "standard output".to_string()
        }
    };

    let written = match &spec.output {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Audit { target: target.clone(), message: e.to_string() })?,
        None => text,
    };
    let back = Table::parse(&written, spec.format, spec.scenario)
        .map_err(|message| CliError::Audit { target: target.clone(), message })?;
    audit::audit(&back).map_err(|message| CliError::Audit { target: target.clone(), message })?;

    if !failures.is_empty() {
        return Err(CliError::PartialScan { total: resolved.omegas.len(), failures });
    }
    Ok(RunSummary { rows: back.rows.len(), output: spec.output.clone() })
}
