//! Classical-field model: interaction-picture amplitude equations with the
//! counter-rotating terms kept, and the closed-form RWA solution.
//!
//! With Ω = 1 and ω_a = ω − Δ the amplitudes obey
//!
//! ```text
//! i dC0/dt = [e^{iΔt} + e^{−i(ω+ω_a)t}] C1
//! i dC1/dt = [e^{−iΔt} + e^{i(ω+ω_a)t}] C0
//! ```

use nalgebra::Vector3;
use num_complex::Complex64 as C64;

use crate::config::{SimConfig, MIN_SAMPLES_PER_PERIOD};
use crate::error::{ConfigErrors, Error, Result};
use crate::ode::{rk4, Dopri5};
use crate::state::{initial_qubit_state, BlochVector, QubitAmplitudes};
use crate::trajectory::{Trajectory, TrajectoryMeta};

const I: C64 = C64::new(0.0, 1.0);

/// Integration scheme for [`integrate_classical`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PropagatorMethod {
    /// Classical RK4 with `steps_per_period` steps per drive period 2π/ω.
    FixedRk4 { steps_per_period: usize },
    /// Dormand-Prince 5(4) with the given tolerances.
    Adaptive { rtol: f64, atol: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalPropagatorSpec {
    pub method: PropagatorMethod,
}

impl Default for ClassicalPropagatorSpec {
    fn default() -> Self {
        Self { method: PropagatorMethod::Adaptive { rtol: 1e-10, atol: 1e-12 } }
    }
}

impl ClassicalPropagatorSpec {
    pub fn fixed(steps_per_period: usize) -> Self {
        Self { method: PropagatorMethod::FixedRk4 { steps_per_period } }
    }

    pub fn adaptive(rtol: f64, atol: f64) -> Self {
        Self { method: PropagatorMethod::Adaptive { rtol, atol } }
    }

    pub fn validate(&self) -> std::result::Result<(), ConfigErrors> {
        let mut errs = ConfigErrors::default();
        match self.method {
            PropagatorMethod::FixedRk4 { steps_per_period } => {
                if steps_per_period < MIN_SAMPLES_PER_PERIOD {
                    errs.push(
                        "steps-per-period",
                        format!("fixed step must resolve the drive: at least {MIN_SAMPLES_PER_PERIOD} steps per period"),
                    );
                }
            }
            PropagatorMethod::Adaptive { rtol, atol } => {
                if !(rtol > 0.0 && atol > 0.0) {
                    errs.push("tolerance", "tolerances must be positive");
                }
            }
        }
        errs.into_result()
    }
}

/// Off-diagonal drive element `h(t)` with `i dC0/dt = h C1`, `i dC1/dt = h* C0`.
fn drive_element(t: f64, omega: f64, detuning: f64) -> C64 {
    let omega_a = omega - detuning;
    C64::from_polar(1.0, detuning * t) + C64::from_polar(1.0, -(omega + omega_a) * t)
}

/// Time derivative of the amplitudes.
pub fn rhs_classical(t: f64, s: &QubitAmplitudes, omega: f64, detuning: f64) -> QubitAmplitudes {
    let h = drive_element(t, omega, detuning);
    QubitAmplitudes::new(-I * h * s.c1, -I * h.conj() * s.c0)
}

/// Instantaneous rotation vector θ̇n̂ of the Bloch vector, `dR/dt = g × R`.
///
/// At resonance this is `(2[1 + cos 2ωt], 2 sin 2ωt, 0)`.
pub fn drive_generator(t: f64, omega: f64, detuning: f64) -> Vector3<f64> {
    let h = drive_element(t, omega, detuning);
    Vector3::new(2.0 * h.re, -2.0 * h.im, 0.0)
}

/// `dg/dt`, the rate of change of [`drive_generator`].
pub fn drive_generator_rate(t: f64, omega: f64, detuning: f64) -> Vector3<f64> {
    let sum = 2.0 * omega - detuning;
    let h_dot = I * detuning * C64::from_polar(1.0, detuning * t) - I * sum * C64::from_polar(1.0, -sum * t);
    Vector3::new(2.0 * h_dot.re, -2.0 * h_dot.im, 0.0)
}

fn rhs_real(omega: f64, detuning: f64) -> impl Fn(f64, &[f64], &mut [f64]) {
    move |t, y, dy| {
        let d = rhs_classical(t, &QubitAmplitudes::from_real(y), omega, detuning);
        dy.copy_from_slice(&d.to_real());
    }
}

/// Integrates the full (non-RWA) amplitude equations from
/// `initial_qubit_state(cfg.theta0)` and samples them on
/// [`SimConfig::output_times`].
///
/// The returned trajectory carries states, Bloch vectors and the path speed
/// `|dR/dt|`.
pub fn integrate_classical(cfg: &SimConfig, spec: &ClassicalPropagatorSpec) -> Result<Trajectory> {
    integrate_classical_at(cfg, spec, &cfg.output_times())
}

/// As [`integrate_classical`], sampled at arbitrary increasing `times`
/// starting at 0 (`cfg.t_end` and the sampling density are ignored).
pub fn integrate_classical_at(cfg: &SimConfig, spec: &ClassicalPropagatorSpec, times: &[f64]) -> Result<Trajectory> {
    cfg.validate()?;
    spec.validate()?;
    if times.first() != Some(&0.0) {
        return Err(Error::GridMismatch("sample times must start at t = 0".into()));
    }
    let times = times.to_vec();
    let y0 = initial_qubit_state(cfg.theta0).to_real();
    let rhs = rhs_real(cfg.omega, cfg.detuning);
    let ys = match spec.method {
        PropagatorMethod::FixedRk4 { steps_per_period } => {
            rk4(&rhs, &y0, &times, cfg.drive_period() / steps_per_period as f64)?
        }
        PropagatorMethod::Adaptive { rtol, atol } => {
            // keep steps below a quarter drive period so dense output stays accurate
            let solver = Dopri5 { max_step: cfg.drive_period() / 4.0, ..Dopri5::new(rtol, atol) };
            solver.solve(&rhs, &y0, &times)?
        }
    };
    let states: Vec<QubitAmplitudes> = ys.iter().map(|y| QubitAmplitudes::from_real(y)).collect();
    let bloch: Vec<BlochVector> = states.iter().map(BlochVector::from_amplitudes_unchecked).collect();
    let speed = times
        .iter()
        .zip(&bloch)
        .map(|(&t, r)| drive_generator(t, cfg.omega, cfg.detuning).cross(&r.as_vector()).norm())
        .collect();
    Ok(Trajectory {
        times,
        states: Some(states),
        bloch,
        speed: Some(speed),
        curvature: None,
        meta: TrajectoryMeta::Classical(*cfg),
    })
}

/// Closed-form RWA solution at resonance: `i dC0/dt = C1`, `i dC1/dt = C0`.
pub fn rwa_state(t: f64, s0: &QubitAmplitudes) -> QubitAmplitudes {
    let (s, c) = t.sin_cos();
    QubitAmplitudes::new(s0.c0 * c - I * s0.c1 * s, s0.c1 * c - I * s0.c0 * s)
}

/// RWA rotation vector: constant rotation about X at rate 2.
pub fn rwa_generator() -> Vector3<f64> {
    Vector3::new(2.0, 0.0, 0.0)
}

/// RWA trajectory on the same grid as [`integrate_classical`] would use.
pub fn rwa_trajectory(cfg: &SimConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if cfg.detuning != 0.0 {
        return Err(Error::Unsupported("closed-form RWA reference is resonant only (detuning = 0)".into()));
    }
    let times = cfg.output_times();
    rwa_trajectory_on(&times, cfg)
}

pub(crate) fn rwa_trajectory_on(times: &[f64], cfg: &SimConfig) -> Result<Trajectory> {
    let s0 = initial_qubit_state(cfg.theta0);
    let states: Vec<QubitAmplitudes> = times.iter().map(|&t| rwa_state(t, &s0)).collect();
    let bloch: Vec<BlochVector> = states.iter().map(BlochVector::from_amplitudes_unchecked).collect();
    let g = rwa_generator();
    let speed = bloch.iter().map(|r| g.cross(&r.as_vector()).norm()).collect();
    Ok(Trajectory {
        times: times.to_vec(),
        states: Some(states),
        bloch,
        speed: Some(speed),
        curvature: None,
        meta: TrajectoryMeta::ClassicalRwa(*cfg),
    })
}
