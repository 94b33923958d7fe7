//! Kinematics of Bloch paths: velocity, acceleration, arc length and
//! curvature.
//!
//! The closed forms below are for the resonant classical-field model, in
//! which `dR/dt = g(t) × R` with `g = θ̇ n̂ = (4cos²ωt, 4 sinωt cosωt, 0)`.
//! Writing `W = X sin ωt − Y cos ωt`:
//!
//! ```text
//! V  = (4Z sin ωt cos ωt, −4Z cos² ωt, −4 cos ωt · W)
//! ṡ  = |V| = 4|cos ωt| √(Z² + W²)
//! R̈  = ∂V/∂t + g × V,   ∂V/∂t = 4ω (Z cos 2ωt, Z sin 2ωt, −X cos 2ωt − Y sin 2ωt)
//! s̈  = 4 (d|cos ωt|/dt) √(Z² + W²)
//!      + 4|cos ωt| ω [½(X² − Y²) sin 2ωt − XY cos 2ωt] / √(Z² + W²)
//! κ  = |R̈ − s̈ t̂| / ṡ² = |V × R̈| / |V|³
//! ```
//!
//! The curvature diverges at the cusp times, where `cos ωt = 0`.

use nalgebra::Vector3;

use crate::classical::{drive_generator, drive_generator_rate, rwa_generator};
use crate::error::{Error, Result};
use crate::rotation::is_cusp_instant;
use crate::state::BlochVector;
use crate::trajectory::{Trajectory, TrajectoryMeta};

/// Path speed below which the curvature is reported as divergent.
pub const SPEED_FLOOR: f64 = 1e-12;

/// Kinematic data at one point of a path. `kappa` is `+∞` where the path
/// speed vanishes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicSample {
    pub t: f64,
    pub r: BlochVector,
    pub v: Vector3<f64>,
    pub a: Vector3<f64>,
    pub s_dot: f64,
    pub s_ddot: f64,
    pub kappa: f64,
}

impl KinematicSample {
    /// Assembles a sample from position, velocity and acceleration.
    pub fn from_derivatives(t: f64, r: BlochVector, v: Vector3<f64>, a: Vector3<f64>) -> Self {
        let s_dot = v.norm();
        let s_ddot = if s_dot > 0.0 { v.dot(&a) / s_dot } else { 0.0 };
        let kappa = curvature_from_derivatives(&v, &a).unwrap_or(f64::INFINITY);
        Self { t, r, v, a, s_dot, s_ddot, kappa }
    }
}

/// `s̈` is one-sided at the cusp instants, where `|cos ωt|` has a kink.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathAcceleration {
    Value(f64),
    OneSided { left: f64, right: f64 },
}

impl PathAcceleration {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Self::Value(v) => Some(v),
            Self::OneSided { .. } => None,
        }
    }
}

fn w_term(r: &BlochVector, s: f64, c: f64) -> f64 {
    r.x * s - r.y * c
}

/// `dR/dt` of the resonant classical model at point `r`, time `t`.
pub fn classical_velocity(r: &BlochVector, t: f64, omega: f64) -> Vector3<f64> {
    let (s, c) = (omega * t).sin_cos();
    Vector3::new(4.0 * r.z * s * c, -4.0 * r.z * c * c, -4.0 * c * w_term(r, s, c))
}

/// `∂V/∂t` at fixed `R`, the explicit time dependence of the velocity field.
pub fn explicit_velocity_rate(r: &BlochVector, t: f64, omega: f64) -> Vector3<f64> {
    let (s2, c2) = (2.0 * omega * t).sin_cos();
    let k = 4.0 * omega;
    Vector3::new(k * r.z * c2, k * r.z * s2, -k * (r.x * c2 + r.y * s2))
}

/// `d²R/dt²` along the resonant classical flow through `r` at time `t`.
pub fn classical_acceleration(r: &BlochVector, t: f64, omega: f64) -> Vector3<f64> {
    let (s, c) = (omega * t).sin_cos();
    let g = Vector3::new(4.0 * c * c, 4.0 * s * c, 0.0);
    explicit_velocity_rate(r, t, omega) + g.cross(&classical_velocity(r, t, omega))
}

/// Path speed `ṡ` and its rate `s̈` for the resonant classical model.
pub fn speed_and_sddot(r: &BlochVector, t: f64, omega: f64) -> (f64, PathAcceleration) {
    let (s, c) = (omega * t).sin_cos();
    let w = w_term(r, s, c);
    let q = (r.z * r.z + w * w).sqrt();
    let s_dot = 4.0 * c.abs() * q;
    let (s2, c2) = (2.0 * omega * t).sin_cos();
    let second = if q > 0.0 {
        4.0 * c.abs() * omega * (0.5 * (r.x * r.x - r.y * r.y) * s2 - r.x * r.y * c2) / q
    } else {
        0.0
    };
    let kink = |sign: f64| 4.0 * (-omega * s * sign) * q;
    let s_ddot = if is_cusp_instant(t, omega) {
        // sgn cos ωt just before / after the zero crossing
        let before = (omega * t).sin().signum();
        PathAcceleration::OneSided { left: kink(before) + second, right: kink(-before) + second }
    } else {
        PathAcceleration::Value(kink(c.signum()) + second)
    };
    (s_dot, s_ddot)
}

/// `|dt̂/ds|` from the closed forms, as `|R̈ − s̈ t̂| / ṡ²`.
pub fn classical_curvature(r: &BlochVector, t: f64, omega: f64) -> Result<f64> {
    let (s_dot, s_ddot) = speed_and_sddot(r, t, omega);
    let s_ddot = match s_ddot {
        PathAcceleration::Value(v) if s_dot >= SPEED_FLOOR => v,
        _ => return Err(Error::CurvatureDivergent { speed: s_dot }),
    };
    let v = classical_velocity(r, t, omega);
    let a = classical_acceleration(r, t, omega);
    let tangent = v / s_dot;
    Ok((a - tangent * s_ddot).norm() / (s_dot * s_dot))
}

/// Full kinematic sample of the classical model; `kappa = +∞` at cusps.
pub fn classical_kinematics(r: &BlochVector, t: f64, omega: f64) -> KinematicSample {
    let v = classical_velocity(r, t, omega);
    let a = classical_acceleration(r, t, omega);
    let (s_dot, s_ddot) = speed_and_sddot(r, t, omega);
    let s_ddot = match s_ddot {
        PathAcceleration::Value(v) => v,
        PathAcceleration::OneSided { right, .. } => right,
    };
    let kappa = classical_curvature(r, t, omega).unwrap_or(f64::INFINITY);
    KinematicSample { t, r: *r, v, a, s_dot, s_ddot, kappa }
}

/// `κ = |v × a| / |v|³`.
pub fn curvature_from_derivatives(v: &Vector3<f64>, a: &Vector3<f64>) -> Result<f64> {
    let speed = v.norm();
    if speed < SPEED_FLOOR {
        return Err(Error::CurvatureDivergent { speed });
    }
    Ok(v.cross(a).norm() / speed.powi(3))
}

/// Fills `traj.curvature` from the model's analytic derivatives: the closed
/// forms at resonance, `V = g × R`, `A = ġ × R + g × V` when detuned, and the
/// constant-generator RWA flow. Quantum trajectories already carry curvature.
/// Points of vanishing speed are reported as `+∞`.
pub fn annotate_curvature(traj: &mut Trajectory) -> Result<()> {
    let kappa: Vec<f64> = match traj.meta {
        TrajectoryMeta::Classical(cfg) if cfg.detuning == 0.0 => traj
            .times
            .iter()
            .zip(&traj.bloch)
            .map(|(&t, r)| classical_curvature(r, t, cfg.omega).unwrap_or(f64::INFINITY))
            .collect(),
        TrajectoryMeta::ClassicalRwa(_) => {
            let g = rwa_generator();
            traj.bloch
                .iter()
                .map(|r| {
                    let v = g.cross(&r.as_vector());
                    curvature_from_derivatives(&v, &g.cross(&v)).unwrap_or(f64::INFINITY)
                })
                .collect()
        }
        TrajectoryMeta::Classical(cfg) => traj
            .times
            .iter()
            .zip(&traj.bloch)
            .map(|(&t, r)| {
                let (g, g_dot) = (drive_generator(t, cfg.omega, cfg.detuning), drive_generator_rate(t, cfg.omega, cfg.detuning));
                let v = g.cross(&r.as_vector());
                let a = g_dot.cross(&r.as_vector()) + g.cross(&v);
                curvature_from_derivatives(&v, &a).unwrap_or(f64::INFINITY)
            })
            .collect(),
        TrajectoryMeta::Quantum { .. } if traj.curvature.is_some() => return Ok(()),
        TrajectoryMeta::Quantum { .. } => return Err(Error::MissingData("curvature")),
    };
    traj.curvature = Some(kappa);
    Ok(())
}

/// Composite Simpson rule on a uniform grid. An odd number of intervals
/// closes with Simpson's 3/8 rule; a single interval falls back to the
/// trapezoid.
pub fn simpson(times: &[f64], values: &[f64]) -> f64 {
    let n = times.len().min(values.len());
    if n < 2 {
        return 0.0;
    }
    let intervals = n - 1;
    let h = (times[n - 1] - times[0]) / intervals as f64;
    if intervals == 1 {
        return 0.5 * h * (values[0] + values[1]);
    }
    let even_end = if intervals.is_multiple_of(2) { intervals } else { intervals - 3 };
    let mut total = 0.0;
    for j in (0..even_end).step_by(2) {
        total += h / 3.0 * (values[j] + 4.0 * values[j + 1] + values[j + 2]);
    }
    if even_end < intervals {
        let j = even_end;
        total += 3.0 * h / 8.0 * (values[j] + 3.0 * values[j + 1] + 3.0 * values[j + 2] + values[j + 3]);
    }
    total
}

/// Running integral on a uniform grid, fourth-order at even nodes.
///
/// Pairs of intervals use Simpson's rule; odd nodes use the quadratic through
/// the surrounding three samples. A trailing unpaired interval uses the
/// quadratic through its last three samples.
pub fn cumulative_simpson(times: &[f64], values: &[f64]) -> Vec<f64> {
    let n = times.len().min(values.len());
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * (times[1] - times[0]) * (values[0] + values[1]);
        return out;
    }
    let h = (times[n - 1] - times[0]) / (n - 1) as f64;
    let mut j = 0;
    while j + 2 < n {
        let (f0, f1, f2) = (values[j], values[j + 1], values[j + 2]);
        out[j + 1] = out[j] + h / 12.0 * (5.0 * f0 + 8.0 * f1 - f2);
        out[j + 2] = out[j] + h / 3.0 * (f0 + 4.0 * f1 + f2);
        j += 2;
    }
    if j + 1 < n {
        let (f0, f1, f2) = (values[j - 1], values[j], values[j + 1]);
        out[j + 1] = out[j] + h / 12.0 * (-f0 + 8.0 * f1 + 5.0 * f2);
    }
    out
}

/// Cumulative arc length `s(t)` from the trajectory's sampled path speed.
pub fn arc_length(traj: &Trajectory) -> Result<Vec<f64>> {
    let speed = traj.speed.as_ref().ok_or(Error::MissingData("path speed"))?;
    traj.check_shape()?;
    Ok(cumulative_simpson(&traj.times, speed))
}

/// Indices of strict interior local maxima of a sampled series (plateaus of
/// equal values count once, at their first index).
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < values.len() {
        if values[i] > values[i - 1] {
            let mut j = i;
            while j + 1 < values.len() && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < values.len() && values[j + 1] < values[i] {
                out.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Indices of interior local minima.
pub fn local_minima(values: &[f64]) -> Vec<usize> {
    let neg: Vec<f64> = values.iter().map(|v| -v).collect();
    local_maxima(&neg)
}

/// Maximum of `f` on `[lo, hi]`: a uniform scan with `grid` intervals, then
/// golden-section refinement between the neighbours of the best sample.
/// Returns `(t, f(t))`.
pub fn refine_maximum<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, grid: usize) -> (f64, f64) {
    let grid = grid.max(2);
    let h = (hi - lo) / grid as f64;
    let (best_i, _) = (0..=grid)
        .map(|i| (i, f(lo + h * i as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let mut a = (lo + h * (best_i as f64 - 1.0)).max(lo);
    let mut b = (lo + h * (best_i as f64 + 1.0)).min(hi);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    let t = 0.5 * (a + b);
    let candidates = [(t, f(t)), (lo + h * best_i as f64, f(lo + h * best_i as f64))];
    candidates.into_iter().fold((t, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc })
}
