//! Explicit Runge-Kutta integrators for real first-order systems.
//!
//! Complex amplitudes are integrated as interleaved `(re, im)` pairs. Both
//! integrators report the state at caller-chosen output times: the fixed-step
//! scheme subdivides each output interval, the adaptive scheme uses the
//! Dormand-Prince continuous extension.

use crate::error::{Error, Result};

/// Right-hand side `dy/dt = f(t, y)`.
pub trait OdeSystem {
    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64]);
}

impl<F> OdeSystem for F
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64]) {
        self(t, y, dy)
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() || !times.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::GridMismatch("output times must be strictly increasing".into()));
    }
    Ok(())
}

/// Classical fourth-order Runge-Kutta with step at most `max_step`.
///
/// Each output interval is split into the smallest number of equal steps
/// not exceeding `max_step`, so the output times are hit exactly. The state at
/// `times[0]` is `y0`.
pub fn rk4<S: OdeSystem + ?Sized>(
    sys: &S,
    y0: &[f64],
    times: &[f64],
    max_step: f64,
) -> Result<Vec<Vec<f64>>> {
    check_times(times)?;
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut out = Vec::with_capacity(times.len());
    out.push(y.clone());
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for w in times.windows(2) {
        let span = w[1] - w[0];
        let steps = (span / max_step - 1e-9).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        for j in 0..steps {
            let t = w[0] + h * j as f64;
            sys.rhs(t, &y, &mut k1);
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * h * k1[i];
            }
            sys.rhs(t + 0.5 * h, &tmp, &mut k2);
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * h * k2[i];
            }
            sys.rhs(t + 0.5 * h, &tmp, &mut k3);
            for i in 0..n {
                tmp[i] = y[i] + h * k3[i];
            }
            sys.rhs(t + h, &tmp, &mut k4);
            for i in 0..n {
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Integration { t_reached: w[1], reason: "non-finite state".into() });
        }
        out.push(y.clone());
    }
    Ok(out)
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Adaptive Dormand-Prince 5(4) with step-size control and fourth-order
/// dense output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    /// Upper bound on the internal step; `f64::INFINITY` for none.
    pub max_step: f64,
    /// Steps below this size abort with an integration error.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, max_step: f64::INFINITY, min_step: 1e-14, max_steps: 10_000_000 }
    }
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::default() }
    }

    fn err_norm(&self, y: &[f64], y_new: &[f64], e: &[f64]) -> f64 {
        let sum: f64 = y
            .iter()
            .zip(y_new)
            .zip(e)
            .map(|((a, b), e)| {
                let sc = self.atol + self.rtol * a.abs().max(b.abs());
                (e / sc).powi(2)
            })
            .sum();
        (sum / y.len() as f64).sqrt()
    }

    fn initial_step<S: OdeSystem + ?Sized>(&self, sys: &S, t0: f64, y0: &[f64], f0: &[f64]) -> f64 {
        let n = y0.len();
        let sc: Vec<f64> = y0.iter().map(|v| self.atol + self.rtol * v.abs()).collect();
        let rms = |v: &[f64]| {
            (v.iter().zip(&sc).map(|(x, s)| (x / s).powi(2)).sum::<f64>() / n as f64).sqrt()
        };
        let d0 = rms(y0);
        let d1 = rms(f0);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let y1: Vec<f64> = y0.iter().zip(f0).map(|(y, f)| y + h0 * f).collect();
        let mut f1 = vec![0.0; n];
        sys.rhs(t0 + h0, &y1, &mut f1);
        let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
        let d2 = rms(&diff) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(self.max_step)
    }

    /// Integrates from `times[0]` and returns the state at every entry of
    /// `times`.
    pub fn solve<S: OdeSystem + ?Sized>(
        &self,
        sys: &S,
        y0: &[f64],
        times: &[f64],
    ) -> Result<Vec<Vec<f64>>> {
        check_times(times)?;
        let n = y0.len();
        let t_final = *times.last().unwrap();
        let mut out = Vec::with_capacity(times.len());
        out.push(y0.to_vec());
        if times.len() == 1 {
            return Ok(out);
        }
        let mut next_out = 1;

        let mut t = times[0];
        let mut y = y0.to_vec();
        let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
        sys.rhs(t, &y, &mut k[0]);
        let mut h = self.initial_step(sys, t, &y, &k[0]);
        let mut y_stage = vec![0.0; n];
        let mut y_new = vec![0.0; n];
        let mut err = vec![0.0; n];
        let mut steps = 0usize;
        let mut last_rejected = false;

        while next_out < times.len() {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::Integration { t_reached: t, reason: "maximum step count exceeded".into() });
            }
            if h < self.min_step || t + h == t {
                return Err(Error::Integration { t_reached: t, reason: "step size underflow".into() });
            }
            let mut stepping_to_end = false;
            if t + h >= t_final {
                h = t_final - t;
                stepping_to_end = true;
            }

            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += h * A[s][j] * kj[i];
                    }
                    y_stage[i] = acc;
                }
                sys.rhs(t + C[s] * h, &y_stage, &mut k[s]);
                if s == 6 {
                    y_new.copy_from_slice(&y_stage);
                }
            }
            for i in 0..n {
                err[i] = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
            }
            let en = self.err_norm(&y, &y_new, &err);
            if !en.is_finite() {
                return Err(Error::Integration { t_reached: t, reason: "non-finite error estimate".into() });
            }

            if en <= 1.0 {
                let t_new = if stepping_to_end { t_final } else { t + h };
                // dense output over [t, t_new]
                while next_out < times.len() && times[next_out] <= t_new {
                    let theta = (times[next_out] - t) / h;
                    let theta1 = 1.0 - theta;
                    let mut yo = vec![0.0; n];
                    for i in 0..n {
                        let ydiff = y_new[i] - y[i];
                        let bspl = h * k[0][i] - ydiff;
                        let r3 = ydiff - h * k[6][i] - bspl;
                        let r4 = h * (0..7).map(|j| D[j] * k[j][i]).sum::<f64>();
                        yo[i] = y[i] + theta * (ydiff + theta1 * (bspl + theta * (r3 + theta1 * r4)));
                    }
                    if times[next_out] == t_new {
                        yo.copy_from_slice(&y_new);
                    }
                    out.push(yo);
                    next_out += 1;
                }
                t = t_new;
                y.copy_from_slice(&y_new);
                let k6 = k[6].clone();
                k[0].copy_from_slice(&k6);
                let fac = (0.9 * en.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
                h *= if last_rejected { fac.min(1.0) } else { fac };
                h = h.min(self.max_step);
                last_rejected = false;
            } else {
                h *= (0.9 * en.powf(-0.2)).max(0.2);
                last_rejected = true;
            }
        }
        Ok(out)
    }
}
