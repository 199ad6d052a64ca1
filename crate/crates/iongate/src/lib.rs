//! Design and verification of fast two-ion geometric phase gates.
//!
//! The crate covers four layers:
//! * [`normal_modes`] — equilibrium geometry, normal-mode frequencies and
//!   vectors of a two-ion crystal in a common harmonic well, and the map
//!   from lab-frame spin-dependent forces to normal-mode forces;
//! * [`force_design`] — inverse engineering of smooth state-dependent
//!   forces from a Fourier-cosine ansatz so that both modes return to rest
//!   at the gate time with a prescribed differential phase;
//! * [`phase_model`] — Lewis-Riesenfeld phases, phase decompositions,
//!   rotating-frame areas and driven-oscillator trajectories used to verify
//!   any design analytically;
//! * [`schrodinger_sim`] — exact 2D split-operator propagation under the
//!   full anharmonic Hamiltonian, including finite-wavelength (sinusoidal)
//!   forces, imaginary-time ground states and Fock initial states.
//!
//! All internal arithmetic uses natural units (ħ = 1, m₁ = 1, ω₁ = 1); SI
//! values enter and leave through [`units::Units`] at the API boundary.

pub mod constants;
pub mod error;
pub mod force_design;
pub mod normal_modes;
pub mod phase_model;
pub mod quadrature;
pub mod schrodinger_sim;
pub mod units;

pub use error::{DesignError, PhaseError, SimError};
pub use force_design::{
    apply_force_ratio, critical_times, design_different_mass, design_equal_mass,
    force_integral_proxy, CriticalTimes, ForceProfile, ForceRatio, GateDesign, InversionVariant,
    Mode, SpinConfig,
};
pub use normal_modes::{
    equilibrium_config, lab_to_modes, mode_frequencies, mode_vectors, modes_to_lab,
    spin_forces_to_mode_forces, EquilibriumGeometry, IonPair, ModeForces, NormalModeBasis,
};
pub use units::Units;
