//! Simulation parameters for the classical-field and quantized-field models.
//!
//! All frequencies are in units of the Rabi frequency Ω (Ω = 1) and all times
//! in units of 1/Ω.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::ConfigErrors;
use crate::quantum::fock;

/// Minimum output samples per drive period `2π/ω`.
pub const MIN_SAMPLES_PER_PERIOD: usize = 16;

/// Tail mass of the coherent state beyond the Fock cutoff that is tolerated.
pub const TAIL_MASS_LIMIT: f64 = 1e-12;

/// Classical-field run parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Field frequency ω.
    pub omega: f64,
    /// Detuning Δ = ω − ω_a.
    pub detuning: f64,
    /// Initial polar angle of the qubit on the Bloch sphere.
    pub theta0: f64,
    pub t_end: f64,
    pub samples_per_drive_period: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            omega: 5.0,
            detuning: 0.0,
            theta0: 0.0,
            t_end: PI,
            samples_per_drive_period: 256,
        }
    }
}

impl SimConfig {
    pub fn with_omega(omega: f64) -> Self {
        Self { omega, ..Self::default() }
    }

    /// Transition frequency ω_a = ω − Δ.
    pub fn omega_a(&self) -> f64 {
        self.omega - self.detuning
    }

    pub fn drive_period(&self) -> f64 {
        TAU / self.omega
    }

    pub fn validate(&self) -> Result<(), ConfigErrors> {
        let mut errs = ConfigErrors::default();
        check_common(
            &mut errs,
            self.omega,
            self.theta0,
            self.t_end,
            self.samples_per_drive_period,
        );
        if !self.detuning.is_finite() {
            errs.push("detuning", "detuning must be finite");
        }
        errs.into_result()
    }

    /// Uniform output grid on `[0, t_end]` with at least
    /// `samples_per_drive_period` points per drive period.
    pub fn output_times(&self) -> Vec<f64> {
        uniform_grid(self.t_end, self.drive_period() / self.samples_per_drive_period as f64)
    }
}

/// Quantized-field run parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumConfig {
    /// Coherent-state amplitude, mean photon number α².
    pub alpha: f64,
    pub theta0: f64,
    /// Field frequency, equal to the qubit frequency (resonance).
    pub omega: f64,
    /// Fock cutoff; `None` selects [`default_cutoff`].
    pub n_max: Option<usize>,
    /// Coupling λ; `None` selects λ = 1/α so that λ√n̄ = 1.
    pub lambda: Option<f64>,
    pub t_end: f64,
    pub samples_per_drive_period: usize,
}

impl Default for QuantumConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            theta0: 0.0,
            omega: 5.0,
            n_max: None,
            lambda: None,
            t_end: PI,
            samples_per_drive_period: 256,
        }
    }
}

/// Fock cutoff `⌈α² + 8α + 20⌉`.
pub fn default_cutoff(alpha: f64) -> usize {
    (alpha * alpha + 8.0 * alpha + 20.0).ceil() as usize
}

impl QuantumConfig {
    pub fn new(alpha: f64, theta0: f64, omega: f64) -> Self {
        Self { alpha, theta0, omega, ..Self::default() }
    }

    pub fn coupling(&self) -> f64 {
        self.lambda.unwrap_or(1.0 / self.alpha)
    }

    pub fn cutoff(&self) -> usize {
        self.n_max.unwrap_or_else(|| default_cutoff(self.alpha))
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.alpha * self.alpha
    }

    /// Photon-number spread Δn = √n̄.
    pub fn photon_number_spread(&self) -> f64 {
        self.alpha.abs()
    }

    pub fn drive_period(&self) -> f64 {
        TAU / self.omega
    }

    pub fn output_times(&self) -> Vec<f64> {
        uniform_grid(self.t_end, self.drive_period() / self.samples_per_drive_period as f64)
    }

    pub fn validate(&self) -> Result<(), ConfigErrors> {
        let mut errs = ConfigErrors::default();
        check_common(
            &mut errs,
            self.omega,
            self.theta0,
            self.t_end,
            self.samples_per_drive_period,
        );
        let alpha_ok = self.alpha.is_finite() && self.alpha >= 0.0;
        if !alpha_ok {
            errs.push("alpha", "alpha must be finite and non-negative");
        }
        match self.lambda {
            Some(l) if !l.is_finite() => errs.push("lambda", "lambda must be finite"),
            None if alpha_ok && self.alpha == 0.0 => {
                errs.push("lambda", "lambda must be given explicitly when alpha = 0")
            }
            _ => {}
        }
        if self.n_max == Some(0) {
            errs.push("n-max", "n-max must be positive");
        } else if alpha_ok {
            let n_max = self.cutoff();
            let tail = fock::tail_mass(self.alpha, n_max);
            if tail >= TAIL_MASS_LIMIT {
                errs.push(
                    "n-max",
                    format!(
                        "n-max = {n_max} leaves coherent-state tail mass {tail:.3e} \
                         (must be < {TAIL_MASS_LIMIT:e})"
                    ),
                );
            }
        }
        errs.into_result()
    }
}

fn check_common(
    errs: &mut ConfigErrors,
    omega: f64,
    theta0: f64,
    t_end: f64,
    samples: usize,
) {
    if !(omega.is_finite() && omega > 0.0) {
        errs.push("omega", "omega must be positive");
    }
    if !theta0.is_finite() {
        errs.push("theta0", "theta0 must be finite");
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        errs.push("t-end", "t-end must be positive");
    }
    if samples < MIN_SAMPLES_PER_PERIOD {
        errs.push(
            "samples-per-period",
            format!("samples-per-period must be at least {MIN_SAMPLES_PER_PERIOD}"),
        );
    }
}

/// Uniform grid `0 = t_0 < … < t_n = t_end` with spacing at most `max_step`.
pub fn uniform_grid(t_end: f64, max_step: f64) -> Vec<f64> {
    let n = ((t_end / max_step) - 1e-9).ceil().max(1.0) as usize;
    (0..=n).map(|i| t_end * i as f64 / n as f64).collect()
}
