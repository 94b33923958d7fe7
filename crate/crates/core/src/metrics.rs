//! Distance between exact and RWA evolutions and the gate-scale error
//!
//! ```text
//! δ = √( (1/τ) ∫₀^τ |R(t) − R_RWA(t)|² dt ),   τ = π
//! ```

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{integrate_classical, rwa_trajectory, rwa_trajectory_on, ClassicalPropagatorSpec};
use crate::config::{QuantumConfig, SimConfig};
use crate::error::{Error, Result};
use crate::geometry::simpson;
use crate::quantum::QuantumRun;
use crate::state::BlochVector;
use crate::trajectory::{ensure_same_grid, Trajectory};

pub fn pointwise_distance(r: &BlochVector, r_rwa: &BlochVector) -> f64 {
    r.distance(r_rwa)
}

/// RMS distance over `[0, tau]`. Both trajectories must share the grid, which
/// must start at 0 and contain `tau` as a sample.
pub fn rms_gate_error(exact: &Trajectory, rwa: &Trajectory, tau: f64) -> Result<f64> {
    ensure_same_grid(&exact.times, &rwa.times)?;
    let times = &exact.times;
    if times.first() != Some(&0.0) {
        return Err(Error::GridMismatch("grid must start at t = 0".into()));
    }
    let end = times
        .iter()
        .position(|&t| (t - tau).abs() <= 1e-9 * tau.max(1.0))
        .ok_or_else(|| Error::GridMismatch(format!("tau = {tau} is not a sample time")))?;
    let sq: Vec<f64> = exact.bloch[..=end]
        .iter()
        .zip(&rwa.bloch[..=end])
        .map(|(a, b)| pointwise_distance(a, b).powi(2))
        .collect();
    Ok((simpson(&times[..=end], &sq) / tau).max(0.0).sqrt())
}

/// Reference evolution for the quantized-field error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum RwaReference {
    /// The Jaynes–Cummings evolution with the same field state.
    #[default]
    JaynesCummings,
    /// The classical-field RWA circle.
    ClassicalRwa,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum DeltaModel {
    Classical,
    Quantum { alpha: f64, reference: RwaReference },
}

impl DeltaModel {
    pub fn quantum(alpha: f64) -> Self {
        Self::Quantum { alpha, reference: RwaReference::default() }
    }
}

/// `δ` at field frequency `omega`, from the north pole, over `τ = π`.
pub fn gate_error(model: DeltaModel, omega: f64, samples_per_drive_period: usize) -> Result<f64> {
    let sim = SimConfig { omega, t_end: PI, samples_per_drive_period, ..SimConfig::default() };
    match model {
        DeltaModel::Classical => {
            let exact = integrate_classical(&sim, &ClassicalPropagatorSpec::default())?;
            rms_gate_error(&exact, &rwa_trajectory(&sim)?, PI)
        }
        DeltaModel::Quantum { alpha, reference } => {
            let cfg = QuantumConfig { t_end: PI, samples_per_drive_period, ..QuantumConfig::new(alpha, 0.0, omega) };
            let times = cfg.output_times();
            let exact = QuantumRun::new(&cfg, false)?.path(&times);
            let rwa = match reference {
                RwaReference::JaynesCummings => QuantumRun::new(&cfg, true)?.path(&times),
                RwaReference::ClassicalRwa => rwa_trajectory_on(&times, &sim)?,
            };
            rms_gate_error(&exact, &rwa, PI)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaScanResult {
    pub model: DeltaModel,
    /// Frequencies that succeeded, increasing.
    pub omegas: Vec<f64>,
    pub deltas: Vec<f64>,
    /// Least-squares slope of `ln δ` against `ln ω`; `None` with fewer than
    /// two usable points.
    pub fitted_loglog_slope: Option<f64>,
    /// Frequencies whose run failed, with the reason.
    pub failures: Vec<(f64, String)>,
}

/// `δ(ω)` for each frequency (in parallel) and the fitted log-log slope.
pub fn delta_scan(omegas: &[f64], model: DeltaModel, samples_per_drive_period: usize) -> Result<DeltaScanResult> {
    if omegas.is_empty() || !omegas.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::Unsupported("scan frequencies must be non-empty and strictly increasing".into()));
    }
    let results: Vec<(f64, Result<f64>)> =
        omegas.par_iter().map(|&w| (w, gate_error(model, w, samples_per_drive_period))).collect();
    let mut out = DeltaScanResult { model, omegas: vec![], deltas: vec![], fitted_loglog_slope: None, failures: vec![] };
    for (w, r) in results {
        match r {
            Ok(d) => {
                out.omegas.push(w);
                out.deltas.push(d);
            }
            Err(e) => out.failures.push((w, e.to_string())),
        }
    }
    out.fitted_loglog_slope = loglog_slope(&out.omegas, &out.deltas);
    Ok(out)
}

/// Unweighted least-squares slope of `ln y` against `ln x` over the positive
/// pairs; `None` unless at least two distinct abscissae remain.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        x.iter().zip(y).filter(|(a, b)| **a > 0.0 && **b > 0.0).map(|(a, b)| (a.ln(), b.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::rotate;
    use crate::trajectory::TrajectoryMeta;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn distance_examples() {
        let n = BlochVector::NORTH_POLE;
        assert_eq!(pointwise_distance(&n, &n), 0.0);
        assert_eq!(pointwise_distance(&n, &BlochVector::SOUTH_POLE), 2.0);
        let d = pointwise_distance(&BlochVector::new(1.0, 0.0, 0.0), &BlochVector::new(0.0, 1.0, 0.0));
        assert_abs_diff_eq!(d, SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn self_distance_is_zero() {
        let rwa = rwa_trajectory(&SimConfig::default()).unwrap();
        assert_eq!(rms_gate_error(&rwa, &rwa, PI).unwrap(), 0.0);
    }

    #[test]
    fn constant_offset() {
        let times: Vec<f64> = (0..=40).map(|i| PI * i as f64 / 40.0).collect();
        let meta = TrajectoryMeta::ClassicalRwa(SimConfig::default());
        let a = Trajectory::new(times.clone(), vec![BlochVector::NORTH_POLE; 41], meta);
        let b = Trajectory::new(times, vec![BlochVector::new(0.0, 0.3, 0.0); 41], meta);
        let d = rms_gate_error(&a, &b, PI).unwrap();
        assert_abs_diff_eq!(d, (1.0f64 + 0.09).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let a = rwa_trajectory(&SimConfig::default()).unwrap();
        let b = rwa_trajectory(&SimConfig { samples_per_drive_period: 128, ..SimConfig::default() }).unwrap();
        assert!(matches!(rms_gate_error(&a, &b, PI), Err(Error::GridMismatch(_))));
        assert!(matches!(rms_gate_error(&a, &a, 1.0), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn slope_fit() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 / v).collect();
        assert_abs_diff_eq!(loglog_slope(&x, &y).unwrap(), -1.0, epsilon = 1e-14);
        assert_eq!(loglog_slope(&[10.0], &[0.1]), None);
        assert_eq!(loglog_slope(&[10.0, 10.0], &[0.1, 0.2]), None);
    }

    #[test]
    fn single_frequency_scan_has_no_slope() {
        let r = delta_scan(&[10.0], DeltaModel::Classical, 64).unwrap();
        assert_eq!(r.deltas.len(), 1);
        assert!(r.fitted_loglog_slope.is_none());
    }

    #[test]
    fn failures_are_retained() {
        let r = delta_scan(&[-1.0, 10.0], DeltaModel::Classical, 64).unwrap();
        assert_eq!(r.omegas, vec![10.0]);
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].1.contains("omega"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn invariant_under_common_rotation(ax in -1.0..1.0f64, ay in -1.0..1.0f64, az in -1.0..1.0f64, angle in 0.0..6.0f64) {
            let axis = Vector3::new(ax, ay, az);
            prop_assume!(axis.norm() > 1e-3);
            let phi = axis.normalize() * angle;
            let cfg = SimConfig { samples_per_drive_period: 32, ..SimConfig::default() };
            let exact = integrate_classical(&cfg, &ClassicalPropagatorSpec::default()).unwrap();
            let rwa = rwa_trajectory(&cfg).unwrap();
            let turn = |t: &Trajectory| {
                let mut out = t.clone();
                out.bloch = t.bloch.iter().map(|r| BlochVector::from_vector(&rotate(&r.as_vector(), &phi))).collect();
                out
            };
            let d0 = rms_gate_error(&exact, &rwa, PI).unwrap();
            let d1 = rms_gate_error(&turn(&exact), &turn(&rwa), PI).unwrap();
            prop_assert!((d0 - d1).abs() < 1e-12);
        }
    }
}
