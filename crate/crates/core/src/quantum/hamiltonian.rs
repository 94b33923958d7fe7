//! Qubit–mode Hamiltonian `H = H_q + H_f + H_I` on the truncated joint space.
//!
//! ```text
//! H_q = (ω_a/2)(|1⟩⟨1| − |0⟩⟨0|)      H_f = ω (a†a + ½)
//! H_I = λ (σ₊ + σ₋)(a + a†)           full coupling
//! H_I = λ (σ₊ a + σ₋ a†)              Jaynes–Cummings (RWA)
//! ```
//!
//! with `σ₊|0⟩ = |1⟩`. All matrix elements are real in the Fock basis, so the
//! operators act on complex vectors through real coefficients.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::config::QuantumConfig;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointHamiltonian {
    /// Field frequency ω.
    pub omega: f64,
    /// Qubit frequency ω_a.
    pub omega_a: f64,
    pub lambda: f64,
    pub n_max: usize,
    /// Drop the counter-rotating terms `σ₊a†` and `σ₋a`.
    pub rwa: bool,
}

impl JointHamiltonian {
    /// Resonant Hamiltonian (`ω_a = ω`) for a run configuration.
    pub fn from_config(cfg: &QuantumConfig, rwa: bool) -> Self {
        Self { omega: cfg.omega, omega_a: cfg.omega, lambda: cfg.coupling(), n_max: cfg.cutoff(), rwa }
    }

    pub fn dim(&self) -> usize {
        2 * (self.n_max + 1)
    }

    /// Qubit energies `(h_0, h_1) = (−ω_a/2, +ω_a/2)`.
    pub fn qubit_energies(&self) -> [f64; 2] {
        [-0.5 * self.omega_a, 0.5 * self.omega_a]
    }

    fn split(&self, v: &DVector<C64>) {
        assert_eq!(v.len(), self.dim(), "vector length does not match the joint space");
    }

    /// `H_q ψ`.
    pub fn apply_qubit(&self, psi: &DVector<C64>) -> DVector<C64> {
        self.split(psi);
        let n1 = self.n_max + 1;
        let h = self.qubit_energies();
        DVector::from_fn(psi.len(), |i, _| psi[i] * h[i / n1])
    }

    /// `H_f ψ`.
    pub fn apply_field(&self, psi: &DVector<C64>) -> DVector<C64> {
        self.split(psi);
        let n1 = self.n_max + 1;
        DVector::from_fn(psi.len(), |i, _| psi[i] * (self.omega * ((i % n1) as f64 + 0.5)))
    }

    /// `H_I ψ`.
    pub fn apply_interaction(&self, psi: &DVector<C64>) -> DVector<C64> {
        self.split(psi);
        let n1 = self.n_max + 1;
        let l = self.lambda;
        let mut out = DVector::zeros(psi.len());
        for n in 0..n1 {
            // (a ψ_q)_n = √(n+1) ψ_{q,n+1},  (a† ψ_q)_n = √n ψ_{q,n−1}
            let lower = |q: usize| if n + 1 < n1 { psi[q * n1 + n + 1] * ((n + 1) as f64).sqrt() } else { C64::new(0.0, 0.0) };
            let raise = |q: usize| if n > 0 { psi[q * n1 + n - 1] * (n as f64).sqrt() } else { C64::new(0.0, 0.0) };
            // σ₊ moves q = 0 → 1, σ₋ moves q = 1 → 0
            let (to_excited, to_ground) = if self.rwa {
                (lower(0), raise(1))
            } else {
                (lower(0) + raise(0), lower(1) + raise(1))
            };
            out[n1 + n] = to_excited * l;
            out[n] = to_ground * l;
        }
        out
    }

    /// `H ψ`.
    pub fn apply(&self, psi: &DVector<C64>) -> DVector<C64> {
        self.apply_qubit(psi) + self.apply_field(psi) + self.apply_interaction(psi)
    }

    /// Excitation number `N = a†a + |1⟩⟨1|` applied to `ψ`.
    pub fn apply_excitation_number(&self, psi: &DVector<C64>) -> DVector<C64> {
        self.split(psi);
        let n1 = self.n_max + 1;
        DVector::from_fn(psi.len(), |i, _| psi[i] * ((i % n1) as f64 + (i / n1) as f64))
    }

    /// Dense real symmetric matrix of `H`, built column by column from the
    /// structured action.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        let mut e = DVector::from_element(dim, C64::new(0.0, 0.0));
        for j in 0..dim {
            e[j] = C64::new(1.0, 0.0);
            let col = self.apply(&e);
            for i in 0..dim {
                m[(i, j)] = col[i].re;
            }
            e[j] = C64::new(0.0, 0.0);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ham(rwa: bool) -> JointHamiltonian {
        JointHamiltonian { omega: 5.0, omega_a: 5.0, lambda: 0.7, n_max: 12, rwa }
    }

    #[test]
    fn dense_is_symmetric() {
        for rwa in [false, true] {
            let m = ham(rwa).to_dense();
            assert_eq!(m, m.transpose());
        }
    }

    #[test]
    fn matrix_elements() {
        let h = ham(false);
        let m = h.to_dense();
        let n1 = h.n_max + 1;
        // ⟨0,0|H|0,0⟩ = −ω_a/2 + ω/2
        assert_eq!(m[(0, 0)], 0.0);
        // ⟨1,3|H|1,3⟩ = ω_a/2 + 3.5 ω
        assert_eq!(m[(n1 + 3, n1 + 3)], 2.5 + 17.5);
        // ⟨1,3|H_I|0,4⟩ = λ√4 (co-rotating), ⟨1,3|H_I|0,2⟩ = λ√3 (counter-rotating)
        assert!((m[(n1 + 3, 4)] - 1.4).abs() < 1e-15);
        assert!((m[(n1 + 3, 2)] - 0.7 * 3f64.sqrt()).abs() < 1e-15);
        let j = ham(true).to_dense();
        assert!((j[(n1 + 3, 4)] - 1.4).abs() < 1e-15);
        assert_eq!(j[(n1 + 3, 2)], 0.0);
    }

    #[test]
    fn jaynes_cummings_conserves_excitations() {
        let h = ham(true);
        let m = h.to_dense();
        let n1 = h.n_max + 1;
        let exc = DMatrix::from_fn(h.dim(), h.dim(), |i, j| if i == j { ((i % n1) + i / n1) as f64 } else { 0.0 });
        // only the truncation edge may break the symmetry; it does not for H_JC
        let comm = &m * &exc - &exc * &m;
        assert!(comm.amax() < 1e-14);
        let full = ham(false).to_dense();
        assert!((&full * &exc - &exc * &full).amax() > 0.1);
    }
}
