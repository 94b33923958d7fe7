//! Truncated Fock space and the joint qubit–field state.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::config::TAIL_MASS_LIMIT;
use crate::error::{Error, Result};
use crate::state::QubitAmplitudes;

/// `ln(|α|^n / √n!)` for successive `n`, accumulated without factorials.
fn log_amplitudes(alpha: f64, upto: usize) -> impl Iterator<Item = (usize, f64)> {
    let ln_a = alpha.abs().ln();
    (0..=upto).scan(0.0, move |acc, n| {
        if n > 0 {
            *acc += ln_a - 0.5 * (n as f64).ln();
        }
        Some((n, *acc))
    })
}

/// Poisson weight `Σ_{n > n_max} e^{−α²} α^{2n} / n!` lost by truncating the
/// coherent state at `n_max`, summed directly over the tail.
pub fn tail_mass(alpha: f64, n_max: usize) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let a2 = alpha * alpha;
    // log p_n at n = n_max + 1
    let mut log_p = -a2 + log_amplitudes(alpha, n_max + 1).last().map_or(0.0, |(_, l)| 2.0 * l);
    let mut total = 0.0;
    let mut n = n_max + 1;
    loop {
        let p = log_p.exp();
        total += p;
        if (n as f64) > a2 && p < 1e-20 * total.max(1e-300) {
            break;
        }
        if n > n_max + 100_000 {
            break;
        }
        n += 1;
        log_p += (a2).ln() - (n as f64).ln();
    }
    total
}

/// Coherent-state amplitudes `c_n = e^{−α²/2} αⁿ / √n!` for `n = 0..=n_max`.
///
/// Fails with [`Error::CutoffTooSmall`] when the discarded tail mass reaches
/// the tolerated limit.
pub fn coherent_amplitudes(alpha: f64, n_max: usize) -> Result<Vec<f64>> {
    let tail = tail_mass(alpha, n_max);
    if tail >= TAIL_MASS_LIMIT {
        return Err(Error::CutoffTooSmall { n_max, tail_mass: tail, limit: TAIL_MASS_LIMIT });
    }
    if alpha == 0.0 {
        let mut c = vec![0.0; n_max + 1];
        c[0] = 1.0;
        return Ok(c);
    }
    let sign = alpha.signum();
    Ok(log_amplitudes(alpha, n_max)
        .map(|(n, l)| {
            let mag = (l - 0.5 * alpha * alpha).exp();
            if n % 2 == 1 { sign * mag } else { mag }
        })
        .collect())
}

/// State of the qubit ⊗ truncated field, basis `|q⟩⊗|n⟩` at index
/// `q·(n_max + 1) + n`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    pub amplitudes: DVector<C64>,
    pub n_max: usize,
}

impl JointState {
    pub fn dim_for(n_max: usize) -> usize {
        2 * (n_max + 1)
    }

    pub fn index(&self, q: usize, n: usize) -> usize {
        q * (self.n_max + 1) + n
    }

    pub fn zeros(n_max: usize) -> Self {
        Self { amplitudes: DVector::zeros(Self::dim_for(n_max)), n_max }
    }

    /// `|q⟩|n⟩`.
    pub fn basis(q: usize, n: usize, n_max: usize) -> Self {
        let mut s = Self::zeros(n_max);
        let i = s.index(q, n);
        s.amplitudes[i] = C64::new(1.0, 0.0);
        s
    }

    /// Product state `(c0|0⟩ + c1|1⟩) ⊗ Σ f_n |n⟩`.
    pub fn product(qubit: &QubitAmplitudes, field: &[f64]) -> Self {
        let n_max = field.len() - 1;
        let mut s = Self::zeros(n_max);
        for (n, &f) in field.iter().enumerate() {
            s.amplitudes[n] = qubit.c0 * f;
            s.amplitudes[n_max + 1 + n] = qubit.c1 * f;
        }
        s
    }

    /// `|φ₀⟩|α⟩` with the qubit at polar angle `theta0`.
    pub fn coherent(theta0: f64, alpha: f64, n_max: usize) -> Result<Self> {
        let field = coherent_amplitudes(alpha, n_max)?;
        Ok(Self::product(&crate::state::initial_qubit_state(theta0), &field))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// Amplitude of `|q⟩|n⟩`.
    pub fn get(&self, q: usize, n: usize) -> C64 {
        self.amplitudes[self.index(q, n)]
    }

    /// Photon-number distribution `P(n) = Σ_q |⟨q, n|ψ⟩|²`.
    pub fn photon_distribution(&self) -> Vec<f64> {
        (0..=self.n_max).map(|n| self.get(0, n).norm_sqr() + self.get(1, n).norm_sqr()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn vacuum() {
        let c = coherent_amplitudes(0.0, 5).unwrap();
        assert_eq!(c, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(tail_mass(0.0, 1), 0.0);
    }

    #[test]
    fn unit_amplitude() {
        let c = coherent_amplitudes(1.0, 40).unwrap();
        let e = (-0.5f64).exp();
        assert_abs_diff_eq!(c[0], e, epsilon = 1e-15);
        assert_abs_diff_eq!(c[1], e, epsilon = 1e-15);
        assert_abs_diff_eq!(c[2], e / 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(c[0], 0.60653, epsilon = 1e-5);
    }

    #[test]
    fn mean_and_spread_at_alpha_five() {
        let c = coherent_amplitudes(5.0, 85).unwrap();
        let p: Vec<f64> = c.iter().map(|x| x * x).collect();
        let mean: f64 = p.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
        let second: f64 = p.iter().enumerate().map(|(n, p)| (n * n) as f64 * p).sum();
        assert_abs_diff_eq!(mean, 25.0, epsilon = 1e-9);
        assert_abs_diff_eq!((second - mean * mean).sqrt(), 5.0, epsilon = 1e-9);
    }

    #[test]
    fn tail_mass_against_complement() {
        // α = 2, n_max = 4: 1 − Σ_{n≤4} p_n computed independently
        let a2: f64 = 4.0;
        let mut head = 0.0;
        let mut term = (-a2).exp();
        for n in 0..=4 {
            if n > 0 {
                term *= a2 / n as f64;
            }
            head += term;
        }
        assert_abs_diff_eq!(tail_mass(2.0, 4), 1.0 - head, epsilon = 1e-14);
    }

    #[test]
    fn cutoff_too_small() {
        assert!(matches!(coherent_amplitudes(5.0, 10), Err(Error::CutoffTooSmall { n_max: 10, .. })));
    }

    #[test]
    fn no_overflow_at_large_alpha() {
        let c = coherent_amplitudes(10.0, 200).unwrap();
        assert!(c.iter().all(|x| x.is_finite()));
        let norm: f64 = c.iter().map(|x| x * x).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn product_state_layout() {
        let q = QubitAmplitudes::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        let s = JointState::product(&q, &[0.0, 1.0, 0.0]);
        assert_eq!(s.get(0, 1), C64::new(0.6, 0.0));
        assert_eq!(s.get(1, 1), C64::new(0.0, 0.8));
        assert_eq!(s.amplitudes[4], C64::new(0.0, 0.8));
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn truncated_norm_is_one(alpha in 0.0..8.0f64) {
            let n_max = crate::config::default_cutoff(alpha);
            let c = coherent_amplitudes(alpha, n_max).unwrap();
            let norm: f64 = c.iter().map(|x| x * x).sum();
            prop_assert!((norm - 1.0).abs() < 1e-12);
            let mean: f64 = c.iter().enumerate().map(|(n, x)| n as f64 * x * x).sum();
            prop_assert!((mean - alpha * alpha).abs() < 1e-9);
        }
    }
}
