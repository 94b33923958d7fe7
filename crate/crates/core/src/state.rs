//! Qubit amplitudes and the Bloch-vector mapping.
//!
//! The computational basis is `{|0⟩, |1⟩}` with `|0⟩` at the north pole
//! (`Z = +1`). Amplitudes are interaction-picture coefficients.

use nalgebra::Vector3;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tolerated deviation of `|c0|² + |c1|²` from one before
/// [`bloch_from_amplitudes`] rejects a state.
pub const NORM_REJECT_TOL: f64 = 1e-6;

/// A pure two-level state `c0|0⟩ + c1|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitAmplitudes {
    pub c0: C64,
    pub c1: C64,
}

impl QubitAmplitudes {
    pub const fn new(c0: C64, c1: C64) -> Self {
        Self { c0, c1 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        Self::new(self.c0 / n, self.c1 / n)
    }

    pub fn with_global_phase(&self, phi: f64) -> Self {
        let u = C64::from_polar(1.0, phi);
        Self::new(u * self.c0, u * self.c1)
    }

    /// Amplitudes (up to a global phase) of the pure state at Bloch point
    /// `r`, which must lie on the unit sphere.
    pub fn from_bloch(r: BlochVector) -> Self {
        let theta = r.z.clamp(-1.0, 1.0).acos();
        // Y = 2 Im(c0* c1) and X = 2 Re(c0* c1), so c1 carries e^{i phi}
        let phi = r.y.atan2(r.x);
        Self::new(
            C64::new((theta / 2.0).cos(), 0.0),
            C64::from_polar((theta / 2.0).sin(), phi),
        )
    }

    /// Packs into `[Re c0, Im c0, Re c1, Im c1]` for the real-valued ODE
    /// integrators.
    pub fn to_real(&self) -> [f64; 4] {
        [self.c0.re, self.c0.im, self.c1.re, self.c1.im]
    }

    pub fn from_real(y: &[f64]) -> Self {
        Self::new(C64::new(y[0], y[1]), C64::new(y[2], y[3]))
    }
}

/// `(cos θ/2, sin θ/2)`: the qubit initial state at polar angle `theta0`.
pub fn initial_qubit_state(theta0: f64) -> QubitAmplitudes {
    let (s, c) = (theta0 / 2.0).sin_cos();
    QubitAmplitudes::new(C64::new(c, 0.0), C64::new(s, 0.0))
}

/// Bloch coordinates of a normalized state.
///
/// `X = 2 Re(c0 c1*)`, `Y = 2 Im(c0* c1)`, `Z = |c0|² − |c1|²`.
pub fn bloch_from_amplitudes(s: &QubitAmplitudes) -> Result<BlochVector> {
    let deviation = (s.norm_sqr() - 1.0).abs();
    if deviation > NORM_REJECT_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    Ok(BlochVector::from_amplitudes_unchecked(s))
}

/// Point of the Bloch ball, `(⟨σ_X⟩, ⟨σ_Y⟩, ⟨σ_Z⟩)`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const NORTH_POLE: Self = Self { x: 0.0, y: 0.0, z: 1.0 };
    pub const SOUTH_POLE: Self = Self { x: 0.0, y: 0.0, z: -1.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_amplitudes_unchecked(s: &QubitAmplitudes) -> Self {
        let (c0, c1) = (s.c0, s.c1);
        Self {
            x: 2.0 * (c0.re * c1.re + c0.im * c1.im),
            y: 2.0 * (c0.re * c1.im - c0.im * c1.re),
            z: c0.norm_sqr() - c1.norm_sqr(),
        }
    }

    pub fn as_vector(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn norm(&self) -> f64 {
        self.as_vector().norm()
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        (self.as_vector() - other.as_vector()).norm()
    }
}

impl From<Vector3<f64>> for BlochVector {
    fn from(v: Vector3<f64>) -> Self {
        Self::from_vector(&v)
    }
}
