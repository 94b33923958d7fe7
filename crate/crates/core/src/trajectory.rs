use serde::{Deserialize, Serialize};

use crate::config::{QuantumConfig, SimConfig};
use crate::error::{Error, Result};
use crate::state::{BlochVector, QubitAmplitudes};

/// Which model produced a trajectory, with the parameters used.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TrajectoryMeta {
    Classical(SimConfig),
    ClassicalRwa(SimConfig),
    Quantum { config: QuantumConfig, rwa: bool },
}

/// Time-ordered samples of a Bloch path.
///
/// `states` is present for pure-state (classical-field) runs; `speed` and
/// `curvature` are filled by the producers that can evaluate them exactly.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Option<Vec<QubitAmplitudes>>,
    pub bloch: Vec<BlochVector>,
    pub speed: Option<Vec<f64>>,
    pub curvature: Option<Vec<f64>>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, bloch: Vec<BlochVector>, meta: TrajectoryMeta) -> Self {
        Self { times, states: None, bloch, speed: None, curvature: None, meta }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_bloch(&self) -> Option<BlochVector> {
        self.bloch.last().copied()
    }

    /// Checks that times are strictly increasing and every column has one
    /// entry per time.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.times.len();
        if !self.times.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::GridMismatch("times are not strictly increasing".into()));
        }
        let lens = [
            Some(self.bloch.len()),
            self.states.as_ref().map(Vec::len),
            self.speed.as_ref().map(Vec::len),
            self.curvature.as_ref().map(Vec::len),
        ];
        if lens.iter().flatten().any(|&l| l != n) {
            return Err(Error::GridMismatch("column lengths differ from the time grid".into()));
        }
        Ok(())
    }

    /// Largest `| |ψ|² − 1 |` over the stored pure states.
    pub fn max_norm_drift(&self) -> Option<f64> {
        self.states
            .as_ref()
            .map(|s| s.iter().map(|a| (a.norm_sqr() - 1.0).abs()).fold(0.0, f64::max))
    }

    /// Largest pointwise Euclidean distance to another trajectory on the same
    /// grid.
    pub fn max_distance(&self, other: &Trajectory) -> Result<f64> {
        ensure_same_grid(&self.times, &other.times)?;
        Ok(self
            .bloch
            .iter()
            .zip(&other.bloch)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max))
    }
}

pub(crate) fn ensure_same_grid(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch(format!("{} vs {} samples", a.len(), b.len())));
    }
    if let Some((i, (x, y))) = a
        .iter()
        .zip(b)
        .enumerate()
        .find(|(_, (x, y))| (*x - *y).abs() > 1e-12 * x.abs().max(1.0))
    {
        return Err(Error::GridMismatch(format!("sample {i}: t = {x} vs {y}")));
    }
    Ok(())
}
