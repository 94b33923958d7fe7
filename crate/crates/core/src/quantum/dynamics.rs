//! Runs of the quantized-field model: trajectories, the Jaynes–Cummings limit
//! and curvature peaks near the cusp times.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::QuantumConfig;
use crate::error::Result;
use crate::geometry::{refine_maximum, KinematicSample};
use crate::quantum::fock::JointState;
use crate::quantum::hamiltonian::JointHamiltonian;
use crate::quantum::observables::{bloch_kinematics_ehrenfest, excitation_moments, reduced_bloch_interaction_frame};
use crate::quantum::spectral::SpectralPropagator;
use crate::state::BlochVector;
use crate::trajectory::{Trajectory, TrajectoryMeta};

/// A diagonalized Hamiltonian together with the initial state `|φ₀⟩|α⟩`.
#[derive(Clone, Debug)]
pub struct QuantumRun {
    pub config: QuantumConfig,
    pub hamiltonian: JointHamiltonian,
    pub propagator: SpectralPropagator,
    pub initial: JointState,
}

impl QuantumRun {
    pub fn new(config: &QuantumConfig, rwa: bool) -> Result<Self> {
        config.validate()?;
        let hamiltonian = JointHamiltonian::from_config(config, rwa);
        let propagator = SpectralPropagator::new(&hamiltonian.to_dense())?;
        let initial = JointState::coherent(config.theta0, config.alpha, hamiltonian.n_max)?;
        Ok(Self { config: *config, hamiltonian, propagator, initial })
    }

    pub fn state_at(&self, t: f64) -> JointState {
        self.propagator.evolve(&self.initial, t)
    }

    pub fn bloch_at(&self, t: f64) -> BlochVector {
        reduced_bloch_interaction_frame(&self.state_at(t), t, self.hamiltonian.omega_a)
    }

    pub fn kinematics_at(&self, t: f64) -> KinematicSample {
        bloch_kinematics_ehrenfest(&self.state_at(t), t, &self.hamiltonian)
    }

    /// Curvature at `t`, `+∞` where the path speed vanishes.
    pub fn curvature_at(&self, t: f64) -> f64 {
        self.kinematics_at(t).kappa
    }

    /// Joint states at each time.
    pub fn states(&self, times: &[f64]) -> Vec<JointState> {
        self.propagator.evolve_many(&self.initial, times)
    }

    /// Reduced Bloch path with Ehrenfest speed and curvature at each time.
    pub fn trajectory(&self, times: &[f64]) -> Trajectory {
        let samples: Vec<KinematicSample> = self
            .states(times)
            .par_iter()
            .zip(times)
            .map(|(psi, &t)| bloch_kinematics_ehrenfest(psi, t, &self.hamiltonian))
            .collect();
        let mut traj = Trajectory::new(
            times.to_vec(),
            samples.iter().map(|k| k.r).collect(),
            TrajectoryMeta::Quantum { config: self.config, rwa: self.hamiltonian.rwa },
        );
        traj.speed = Some(samples.iter().map(|k| k.s_dot).collect());
        traj.curvature = Some(samples.iter().map(|k| k.kappa).collect());
        traj
    }

    /// Reduced Bloch path only, without derivatives.
    pub fn path(&self, times: &[f64]) -> Trajectory {
        let bloch = self
            .states(times)
            .par_iter()
            .zip(times)
            .map(|(psi, &t)| reduced_bloch_interaction_frame(psi, t, self.hamiltonian.omega_a))
            .collect();
        Trajectory::new(times.to_vec(), bloch, TrajectoryMeta::Quantum { config: self.config, rwa: self.hamiltonian.rwa })
    }

    /// Largest `|ψ|² − 1` and largest spread of the excitation-number variance
    /// over the given times.
    pub fn conservation_drift(&self, times: &[f64]) -> (f64, f64) {
        let states = self.states(times);
        let norm = states.iter().map(|s| (s.norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
        let vars: Vec<f64> = states.iter().map(|s| excitation_moments(s, &self.hamiltonian).1).collect();
        let lo = vars.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vars.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (norm, hi - lo)
    }

    /// Largest curvature within `±half_width` of `center` (clipped at 0),
    /// located by a grid scan refined with golden-section search.
    pub fn curvature_peak_near(&self, center: f64, half_width: f64) -> CurvaturePeak {
        let lo = (center - half_width).max(0.0);
        let hi = center + half_width;
        let finite = |t: f64| {
            let k = self.curvature_at(t);
            if k.is_finite() { k } else { f64::MAX }
        };
        let (t, kappa) = refine_maximum(finite, lo, hi, 2000);
        CurvaturePeak { t, kappa }
    }
}

/// Full-model trajectory on the configuration's output grid.
pub fn quantum_trajectory(cfg: &QuantumConfig) -> Result<Trajectory> {
    Ok(QuantumRun::new(cfg, false)?.trajectory(&cfg.output_times()))
}

/// Jaynes–Cummings (RWA) trajectory at the given times.
pub fn jaynes_cummings_trajectory(cfg: &QuantumConfig, times: &[f64]) -> Result<Trajectory> {
    Ok(QuantumRun::new(cfg, true)?.trajectory(times))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvaturePeak {
    pub t: f64,
    pub kappa: f64,
}

/// Curvature of one quantum path near the first two cusp times
/// `t₁ = π/(2ω)`, `t₂ = 3π/(2ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureRow {
    pub alpha: f64,
    pub theta0: f64,
    pub omega: f64,
    /// κ evaluated exactly at `t₁`, `t₂`.
    pub kappa_t1: f64,
    pub kappa_t2: f64,
    /// Local maxima within a quarter drive period of `t₁`, `t₂`.
    pub peak1: CurvaturePeak,
    pub peak2: CurvaturePeak,
}

pub fn curvature_row(cfg: &QuantumConfig) -> Result<CurvatureRow> {
    let run = QuantumRun::new(cfg, false)?;
    let (t1, t2) = (PI / (2.0 * cfg.omega), 3.0 * PI / (2.0 * cfg.omega));
    let half = PI / (2.0 * cfg.omega);
    Ok(CurvatureRow {
        alpha: cfg.alpha,
        theta0: cfg.theta0,
        omega: cfg.omega,
        kappa_t1: run.curvature_at(t1),
        kappa_t2: run.curvature_at(t2),
        peak1: run.curvature_peak_near(t1, half),
        peak2: run.curvature_peak_near(t2, half),
    })
}

/// The three cases `(α, θ₀) = (1, 0), (1, π), (5, 0)` at field frequency `omega`.
pub fn curvature_table(omega: f64) -> Result<Vec<CurvatureRow>> {
    [(1.0, 0.0), (1.0, PI), (5.0, 0.0)]
        .par_iter()
        .map(|&(alpha, theta0)| curvature_row(&QuantumConfig::new(alpha, theta0, omega)))
        .collect()
}
