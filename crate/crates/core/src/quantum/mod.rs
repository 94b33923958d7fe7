//! Qubit coupled to a single quantized field mode.

pub mod dynamics;
pub mod fock;
pub mod hamiltonian;
pub mod observables;
pub mod spectral;

pub use dynamics::{
    curvature_row, curvature_table, jaynes_cummings_trajectory, quantum_trajectory, CurvaturePeak, CurvatureRow,
    QuantumRun,
};
pub use fock::{coherent_amplitudes, tail_mass, JointState};
pub use hamiltonian::JointHamiltonian;
pub use observables::{bloch_kinematics_ehrenfest, purity, reduced_bloch_interaction_frame, reduced_density};
pub use spectral::SpectralPropagator;
