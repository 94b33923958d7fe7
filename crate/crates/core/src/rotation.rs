//! Instantaneous rotation of the Bloch vector in the resonant classical-field
//! model.
//!
//! Over an infinitesimal step the evolution is a rotation by `θ̇ dt` about
//! `n̂`, with `θ̇ = 4|cos ωt|` and `n̂ = (|cos ωt|, sin ωt · sgn cos ωt, 0)`.
//! The speed vanishes at the cusp times `t_k = (2k+1)π/(2ω)`, where the axis
//! flips from `+Y` to `−Y`. The product `θ̇ n̂` (the generator) stays smooth.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::classical::drive_generator;
use crate::error::{Error, Result};
use crate::trajectory::{Trajectory, TrajectoryMeta};

/// `|cos ωt|` below this is treated as an exact cusp instant.
pub const CUSP_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationSample {
    pub t: f64,
    /// `None` exactly at a cusp, where the axis is undefined.
    pub axis: Option<Vector3<f64>>,
    pub speed: f64,
}

impl RotationSample {
    /// The generator `θ̇ n̂`, zero at cusps.
    pub fn generator(&self) -> Vector3<f64> {
        self.axis.map_or_else(Vector3::zeros, |n| n * self.speed)
    }
}

/// True when `t` is a cusp instant to within rounding of the phase `ωt`.
pub fn is_cusp_instant(t: f64, omega: f64) -> bool {
    let phase = omega * t;
    phase.cos().abs() < CUSP_TOL * phase.abs().max(1.0)
}

pub fn rotation_speed(t: f64, omega: f64) -> f64 {
    4.0 * (omega * t).cos().abs()
}

pub fn rotation_axis(t: f64, omega: f64) -> Result<Vector3<f64>> {
    if is_cusp_instant(t, omega) {
        return Err(Error::CuspDegenerate { t });
    }
    let (s, c) = (omega * t).sin_cos();
    Ok(Vector3::new(c.abs(), s * c.signum(), 0.0))
}

pub fn rotation_sample(t: f64, omega: f64) -> RotationSample {
    RotationSample { t, axis: rotation_axis(t, omega).ok(), speed: rotation_speed(t, omega) }
}

/// `θ̇ n̂ = (2[1 + cos 2ωt], 2 sin 2ωt, 0)`, continuous through the cusps.
pub fn rotation_generator(t: f64, omega: f64) -> Vector3<f64> {
    drive_generator(t, omega, 0.0)
}

/// Cusp times `t_k = (2k+1)π/(2ω) ≤ t_end`.
pub fn cusp_times(omega: f64, t_end: f64) -> Vec<f64> {
    assert!(omega > 0.0, "omega must be positive");
    let limit = t_end * (1.0 + 1e-12);
    (0..)
        .map(|k| (2 * k + 1) as f64 * PI / (2.0 * omega))
        .take_while(|&t| t <= limit)
        .collect()
}

/// Times `kπ/ω ≤ t_end` where the rotation speed peaks at 4.
pub fn speed_maxima_times(omega: f64, t_end: f64) -> Vec<f64> {
    let limit = t_end * (1.0 + 1e-12);
    (0..).map(|k| k as f64 * PI / omega).take_while(|&t| t <= limit).collect()
}

/// Rotates `r` by the rotation vector `phi` (angle `|phi|` about `phi/|phi|`,
/// right-handed).
pub fn rotate(r: &Vector3<f64>, phi: &Vector3<f64>) -> Vector3<f64> {
    let angle = phi.norm();
    if angle == 0.0 {
        return *r;
    }
    let n = phi / angle;
    let (s, c) = angle.sin_cos();
    r * c + n.cross(r) * s + n * n.dot(r) * (1.0 - c)
}

/// How the generator is turned into a finite rotation over one sample step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneratorSampling {
    /// Generator frozen at the left end of the step.
    LeftPoint,
    /// Generator integrated over the step (3-point Gauss-Legendre).
    #[default]
    IntervalIntegrated,
}

fn step_rotation<G: Fn(f64) -> Vector3<f64>>(g: &G, t0: f64, t1: f64, mode: GeneratorSampling) -> Vector3<f64> {
    let h = t1 - t0;
    match mode {
        GeneratorSampling::LeftPoint => g(t0) * h,
        GeneratorSampling::IntervalIntegrated => {
            let mid = 0.5 * (t0 + t1);
            let off = 0.5 * h * (3.0f64 / 5.0).sqrt();
            (g(mid - off) * 5.0 + g(mid) * 8.0 + g(mid + off) * 5.0) * (h / 18.0)
        }
    }
}

/// Largest deviation between each sampled `R(t + δt)` and `R(t)` carried
/// forward by the finite rotation built from `generator` over that step.
pub fn decomposition_residual<G>(traj: &Trajectory, generator: G, mode: GeneratorSampling) -> f64
where
    G: Fn(f64) -> Vector3<f64>,
{
    traj.times
        .windows(2)
        .zip(traj.bloch.windows(2))
        .map(|(t, r)| {
            let phi = step_rotation(&generator, t[0], t[1], mode);
            (rotate(&r[0].as_vector(), &phi) - r[1].as_vector()).norm()
        })
        .fold(0.0, f64::max)
}

/// Checks a resonant classical trajectory against the axis/speed
/// decomposition using [`GeneratorSampling::IntervalIntegrated`].
pub fn verify_decomposition(traj: &Trajectory, omega: f64) -> Result<f64> {
    verify_decomposition_with(traj, omega, GeneratorSampling::default())
}

pub fn verify_decomposition_with(traj: &Trajectory, omega: f64, mode: GeneratorSampling) -> Result<f64> {
    match traj.meta {
        TrajectoryMeta::Classical(cfg) | TrajectoryMeta::ClassicalRwa(cfg) if cfg.detuning != 0.0 => {
            return Err(Error::Unsupported("rotation decomposition is derived at resonance only".into()));
        }
        TrajectoryMeta::Quantum { .. } => {
            return Err(Error::Unsupported("quantum-field reduced dynamics is not a rotation".into()));
        }
        _ => {}
    }
    Ok(decomposition_residual(traj, |t| rotation_generator(t, omega), mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    #[test]
    fn speed_values() {
        assert_eq!(rotation_speed(0.0, 5.0), 4.0);
        assert!(rotation_speed(PI / 10.0, 5.0) < 1e-15);
        assert_abs_diff_eq!(rotation_speed(PI / 20.0, 5.0), 2.0 * SQRT_2, epsilon = 1e-14);
    }

    #[test]
    fn axis_values() {
        let n = rotation_axis(0.0, 5.0).unwrap();
        assert_eq!(n, Vector3::new(1.0, 0.0, 0.0));
        let n = rotation_axis(PI / 20.0, 5.0).unwrap();
        assert_abs_diff_eq!(n[0], FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(n[1], FRAC_1_SQRT_2, epsilon = 1e-15);
        assert!(matches!(rotation_axis(PI / 10.0, 5.0), Err(Error::CuspDegenerate { .. })));
    }

    #[test]
    fn axis_flips_across_cusp() {
        let t0 = PI / 10.0;
        let before = rotation_axis(t0 - 1e-9, 5.0).unwrap();
        let after = rotation_axis(t0 + 1e-9, 5.0).unwrap();
        assert!((before - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-8);
        assert!((after - Vector3::new(0.0, -1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn cusp_listings() {
        let t = cusp_times(5.0, PI);
        assert_eq!(t.len(), 5);
        for (k, tk) in t.iter().enumerate() {
            assert_abs_diff_eq!(*tk, (2 * k + 1) as f64 * PI / 10.0, epsilon = 1e-15);
        }
        let t = cusp_times(2.5, PI);
        assert_eq!(t.len(), 3);
        assert_abs_diff_eq!(t[2], PI, epsilon = 1e-15);
        let t = cusp_times(20.0, PI);
        assert_eq!(t.len(), 20);
        assert!(t.windows(2).all(|w| (w[1] - w[0] - PI / 20.0).abs() < 1e-14));
    }

    #[test]
    fn mean_speed_over_half_period() {
        // ∫_0^{π/ω} 4|cos ωt| dt = 8/ω, by composite Simpson on a fine grid
        let omega = 3.0;
        let n = 20_000;
        let h = PI / omega / n as f64;
        let f = |i: usize| rotation_speed(i as f64 * h, omega);
        let mut sum = f(0) + f(n);
        for i in 1..n {
            sum += if i % 2 == 1 { 4.0 * f(i) } else { 2.0 * f(i) };
        }
        assert_abs_diff_eq!(sum * h / 3.0, 8.0 / omega, epsilon = 1e-8);
    }

    #[test]
    fn rodrigues_quarter_turn() {
        let r = rotate(&Vector3::new(0.0, 0.0, 1.0), &Vector3::new(PI / 2.0, 0.0, 0.0));
        assert!((r - Vector3::new(0.0, -1.0, 0.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn axis_unit_and_speed_bounded(t in -50.0..50.0f64, omega in 0.1..40.0f64) {
            let s = rotation_sample(t, omega);
            prop_assert!((0.0..=4.0).contains(&s.speed));
            if let Some(n) = s.axis {
                prop_assert!((n.norm() - 1.0).abs() < 1e-12);
                prop_assert_eq!(n[2], 0.0);
            }
        }

        #[test]
        fn generator_matches_axis_times_speed(t in -50.0..50.0f64, omega in 0.1..40.0f64) {
            let s = rotation_sample(t, omega);
            let a = 2.0 * omega * t;
            let g = s.generator();
            prop_assert!((g[0] - 2.0 * (1.0 + a.cos())).abs() < 1e-12);
            prop_assert!((g[1] - 2.0 * a.sin()).abs() < 1e-12);
            prop_assert!((g - rotation_generator(t, omega)).norm() < 1e-12);
        }

        #[test]
        fn speed_has_period_pi_over_omega(t in 0.0..10.0f64, omega in 0.5..20.0f64) {
            prop_assert!((rotation_speed(t, omega) - rotation_speed(t + PI / omega, omega)).abs() < 1e-11);
        }
    }
}
