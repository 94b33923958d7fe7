use thiserror::Error;

/// Errors produced by the simulation and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: | |c0|^2 + |c1|^2 - 1 | = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigErrors),

    #[error("integration failed at t = {t_reached}: {reason}")]
    Integration { t_reached: f64, reason: String },

    #[error("rotation axis undefined at cusp instant t = {t}")]
    CuspDegenerate { t: f64 },

    #[error("curvature diverges: path speed {speed:e} below threshold")]
    CurvatureDivergent { speed: f64 },

    #[error("one-sided limit at cusp instant t = {t}: derivative of |cos(omega t)| is undefined")]
    OneSidedLimit { t: f64 },

    #[error("Fock cutoff n_max = {n_max} too small: tail mass {tail_mass:e} >= {limit:e}")]
    CutoffTooSmall { n_max: usize, tail_mass: f64, limit: f64 },

    #[error("diagonalization failed for a {dim}x{dim} Hamiltonian")]
    Diagonalization { dim: usize },

    #[error("time grids differ: {0}")]
    GridMismatch(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("trajectory carries no {0} data")]
    MissingData(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A single configuration problem, keyed by the parameter name used on the
/// command line.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub key: String,
    pub message: String,
}

impl ConfigIssue {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self { key: key.into(), message: message.into() }
    }
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.key, self.message)
    }
}

/// Every violation found while validating a configuration, not only the first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfigErrors(pub Vec<ConfigIssue>);

impl ConfigErrors {
    pub fn push(&mut self, key: impl Into<String>, message: impl Into<String>) {
        self.0.push(ConfigIssue::new(key, message));
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn issues(&self) -> &[ConfigIssue] {
        &self.0
    }

    pub fn mentions(&self, key: &str) -> bool {
        self.0.iter().any(|i| i.key == key)
    }

    pub fn into_result(self) -> std::result::Result<(), ConfigErrors> {
        if self.0.is_empty() { Ok(()) } else { Err(self) }
    }
}

impl std::fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl std::error::Error for ConfigErrors {}
