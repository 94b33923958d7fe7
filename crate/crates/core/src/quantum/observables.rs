//! Qubit observables of a joint state, in the frame rotating with the qubit.
//!
//! The frame-rotated Paulis are `Σ_i(t) = U σ_i U†` with
//! `U = e^{−iH_q t} = diag(e^{iω_a t/2}, e^{−iω_a t/2})`, so that
//! `⟨Σ_i(t)⟩` is the interaction-picture Bloch vector. Their time
//! derivatives follow from Ehrenfest's theorem:
//!
//! ```text
//! d⟨Σ⟩/dt  = ⟨i[H_I, Σ]⟩                          (H_q cancels, H_f commutes)
//! d²⟨Σ⟩/dt² = ⟨i[H, C]⟩ + ⟨i[H_I, ∂_tΣ]⟩,   C = i[H_I, Σ],   ∂_tΣ = −i[H_q, Σ]
//! ```
//!
//! Each expectation `⟨i[A, B]⟩` of Hermitian `A`, `B` is evaluated as
//! `−2 Im⟨Aψ|Bψ⟩`, so only operator applications are needed.

use nalgebra::{DVector, Vector3};
use num_complex::Complex64 as C64;

use crate::geometry::KinematicSample;
use crate::quantum::fock::JointState;
use crate::quantum::hamiltonian::JointHamiltonian;
use crate::state::BlochVector;

const I: C64 = C64::new(0.0, 1.0);

/// Reduced qubit density matrix `ρ_ab = Σ_n ψ_{a,n} ψ*_{b,n}`.
pub fn reduced_density(psi: &JointState) -> [[C64; 2]; 2] {
    let mut rho = [[C64::new(0.0, 0.0); 2]; 2];
    for n in 0..=psi.n_max {
        let (p0, p1) = (psi.get(0, n), psi.get(1, n));
        rho[0][0] += p0 * p0.conj();
        rho[0][1] += p0 * p1.conj();
        rho[1][1] += p1 * p1.conj();
    }
    rho[1][0] = rho[0][1].conj();
    rho
}

/// `Tr ρ²` of the reduced qubit state.
pub fn purity(psi: &JointState) -> f64 {
    let r = reduced_density(psi);
    r[0][0].re.powi(2) + r[1][1].re.powi(2) + 2.0 * r[0][1].norm_sqr()
}

/// Reduced Bloch vector in the frame rotating at `omega_a`.
pub fn reduced_bloch_interaction_frame(psi: &JointState, t: f64, omega_a: f64) -> BlochVector {
    let rho = reduced_density(psi);
    let rho01 = rho[0][1] * C64::from_polar(1.0, -omega_a * t);
    BlochVector::new(2.0 * rho01.re, -2.0 * rho01.im, rho[0][0].re - rho[1][1].re)
}

/// Mean and variance of the excitation number `a†a + |1⟩⟨1|`.
pub fn excitation_moments(psi: &JointState, ham: &JointHamiltonian) -> (f64, f64) {
    let n_psi = ham.apply_excitation_number(&psi.amplitudes);
    let mean = psi.amplitudes.dotc(&n_psi).re;
    let second = n_psi.norm_squared();
    (mean, second - mean * mean)
}

/// Pauli matrices in the order X, Y, Z (`σ_Y = [[0, −i], [i, 0]]`).
fn paulis() -> [[[C64; 2]; 2]; 3] {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    [[[o, l], [l, o]], [[o, -I], [I, o]], [[l, o], [o, -l]]]
}

/// `Σ_ab(t) = e^{−i(h_a − h_b)t} σ_ab`.
fn frame_paulis(t: f64, h: [f64; 2]) -> [[[C64; 2]; 2]; 3] {
    let mut out = paulis();
    for s in &mut out {
        for (a, row) in s.iter_mut().enumerate() {
            for (b, x) in row.iter_mut().enumerate() {
                *x *= C64::from_polar(1.0, -(h[a] - h[b]) * t);
            }
        }
    }
    out
}

/// A 2×2 qubit operator acting on the joint space.
fn apply_qubit_op(m: &[[C64; 2]; 2], psi: &DVector<C64>, n1: usize) -> DVector<C64> {
    DVector::from_fn(psi.len(), |i, _| {
        let (a, n) = (i / n1, i % n1);
        m[a][0] * psi[n] + m[a][1] * psi[n1 + n]
    })
}

/// `⟨i[A, B]⟩ = −2 Im⟨Aψ|Bψ⟩`.
fn commutator_expectation(a_psi: &DVector<C64>, b_psi: &DVector<C64>) -> f64 {
    -2.0 * a_psi.dotc(b_psi).im
}

/// Reduced Bloch vector with its exact first and second time derivatives.
pub fn bloch_kinematics_ehrenfest(psi: &JointState, t: f64, ham: &JointHamiltonian) -> KinematicSample {
    let n1 = ham.n_max + 1;
    let h = ham.qubit_energies();
    let amps = &psi.amplitudes;
    let hi_psi = ham.apply_interaction(amps);
    let h_psi = ham.apply(amps);
    let mut r = Vector3::zeros();
    let mut v = Vector3::zeros();
    let mut a = Vector3::zeros();
    for (k, sigma) in frame_paulis(t, h).iter().enumerate() {
        let s_psi = apply_qubit_op(sigma, amps, n1);
        r[k] = amps.dotc(&s_psi).re;
        v[k] = commutator_expectation(&hi_psi, &s_psi);
        // Cψ = i(H_I Σψ − Σ H_I ψ)
        let c_psi = (ham.apply_interaction(&s_psi) - apply_qubit_op(sigma, &hi_psi, n1)) * I;
        let mut s_dot = *sigma;
        for (ai, row) in s_dot.iter_mut().enumerate() {
            for (bi, x) in row.iter_mut().enumerate() {
                *x *= -I * (h[ai] - h[bi]);
            }
        }
        let sd_psi = apply_qubit_op(&s_dot, amps, n1);
        a[k] = commutator_expectation(&h_psi, &c_psi) + commutator_expectation(&hi_psi, &sd_psi);
    }
    KinematicSample::from_derivatives(t, BlochVector::from_vector(&r), v, a)
}
