//! Two-level system driven beyond the rotating wave approximation.
//!
//! The qubit is driven either by a classical field (amplitude equations in the
//! interaction picture) or by a single quantized mode prepared in a coherent
//! state. Frequencies are in units of the Rabi frequency and all Bloch paths
//! are reported in the frame rotating with the qubit.
//!
//! - [`classical`]: the exact amplitude equations and the RWA closed form.
//! - [`rotation`]: instantaneous rotation axis and speed, cusp times.
//! - [`geometry`]: velocity, acceleration, arc length and curvature of paths.
//! - [`quantum`]: truncated Fock space, spectral evolution, Jaynes–Cummings.
//! - [`metrics`]: distances to the RWA evolution and the `δ ∝ 1/ω` scan.

pub mod classical;
pub mod config;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod ode;
pub mod quantum;
pub mod rotation;
pub mod state;
pub mod trajectory;

pub use config::{QuantumConfig, SimConfig};
pub use error::{ConfigErrors, ConfigIssue, Error, Result};
pub use state::{bloch_from_amplitudes, initial_qubit_state, BlochVector, QubitAmplitudes};
pub use trajectory::{Trajectory, TrajectoryMeta};
