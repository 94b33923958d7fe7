//! Exact evolution `e^{−iHt}` through a one-time diagonalization of the
//! (real symmetric) joint Hamiltonian.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::fock::JointState;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 0; // unbounded

#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    pub eigenvalues: DVector<f64>,
    /// Orthogonal matrix whose columns are the eigenvectors.
    pub eigenvectors: DMatrix<f64>,
}

impl SpectralPropagator {
    pub fn new(h: &DMatrix<f64>) -> Result<Self> {
        let dim = h.nrows();
        if !h.is_square() || h.iter().any(|x| !x.is_finite()) {
            return Err(Error::Diagonalization { dim });
        }
        let eig = SymmetricEigen::try_new(h.clone(), EIGEN_EPS, EIGEN_MAX_ITER)
            .ok_or(Error::Diagonalization { dim })?;
        Ok(Self { eigenvalues: eig.eigenvalues, eigenvectors: eig.eigenvectors })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max |H − UΛUᵀ|`.
    pub fn reconstruction_error(&self, h: &DMatrix<f64>) -> f64 {
        let u = &self.eigenvectors;
        let rebuilt = u * DMatrix::from_diagonal(&self.eigenvalues) * u.transpose();
        (h - rebuilt).amax()
    }

    /// Eigenbasis coordinates `Uᵀψ`.
    pub fn project(&self, psi: &JointState) -> DVector<C64> {
        let re = self.eigenvectors.tr_mul(&psi.amplitudes.map(|c| c.re));
        let im = self.eigenvectors.tr_mul(&psi.amplitudes.map(|c| c.im));
        DVector::from_fn(self.dim(), |i, _| C64::new(re[i], im[i]))
    }

    /// `ψ(t) = U e^{−iΛt} b` for eigenbasis coordinates `b`.
    pub fn evolve_projected(&self, b: &DVector<C64>, t: f64, n_max: usize) -> JointState {
        if t == 0.0 {
            let re = &self.eigenvectors * b.map(|c| c.re);
            let im = &self.eigenvectors * b.map(|c| c.im);
            return JointState { amplitudes: DVector::from_fn(self.dim(), |i, _| C64::new(re[i], im[i])), n_max };
        }
        let phased = DVector::from_fn(self.dim(), |k, _| b[k] * C64::from_polar(1.0, -self.eigenvalues[k] * t));
        let re = &self.eigenvectors * phased.map(|c| c.re);
        let im = &self.eigenvectors * phased.map(|c| c.im);
        JointState { amplitudes: DVector::from_fn(self.dim(), |i, _| C64::new(re[i], im[i])), n_max }
    }

    pub fn evolve(&self, psi0: &JointState, t: f64) -> JointState {
        if t == 0.0 {
            return psi0.clone();
        }
        self.evolve_projected(&self.project(psi0), t, psi0.n_max)
    }

    /// States at each time, evaluated in parallel.
    pub fn evolve_many(&self, psi0: &JointState, times: &[f64]) -> Vec<JointState> {
        let b = self.project(psi0);
        times
            .par_iter()
            .map(|&t| if t == 0.0 { psi0.clone() } else { self.evolve_projected(&b, t, psi0.n_max) })
            .collect()
    }
}
