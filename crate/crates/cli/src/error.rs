use std::path::PathBuf;

use bloch_rwa::{ConfigErrors, Error};
use thiserror::Error;

/// Exit status for invalid parameters or an unusable output path.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status for failures during the computation or the output audit.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Validation(ConfigErrors),

    #[error("numerical failure: {0}")]
    Numerical(Error),

    #[error("cannot write {}: {message}", path.display())]
    Output { path: PathBuf, message: String },

    #[error("post-write audit of {target} failed: {message}")]
    Audit { target: String, message: String },

    #[error("{} of {total} scan points failed: {}", failures.len(), describe(failures))]
    PartialScan { total: usize, failures: Vec<(f64, String)> },
}

fn describe(failures: &[(f64, String)]) -> String {
    failures.iter().map(|(w, e)| format!("omega={w}: {e}")).collect::<Vec<_>>().join("; ")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Output { .. } => EXIT_VALIDATION,
            CliError::Numerical(_) | CliError::Audit { .. } | CliError::PartialScan { .. } => EXIT_NUMERICAL,
        }
    }
}

impl From<ConfigErrors> for CliError {
    fn from(e: ConfigErrors) -> Self {
        CliError::Validation(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(c) => CliError::Validation(c),
            Error::CutoffTooSmall { .. } => {
                let mut c = ConfigErrors::default();
                c.push("n-max", e.to_string());
                CliError::Validation(c)
            }
            Error::Unsupported(msg) => {
                let mut c = ConfigErrors::default();
                c.push("scenario", msg);
                CliError::Validation(c)
            }
            other => CliError::Numerical(other),
        }
    }
}
