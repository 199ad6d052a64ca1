//! Physical constants (CODATA 2018) and the ion species table.

use std::f64::consts::PI;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054571817e-34;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.8541878128e-12;
/// Atomic mass unit, kg.
pub const ATOMIC_MASS_KG: f64 = 1.66053906660e-27;
/// Coulomb coupling e²/(4πε₀), N m².
pub const COULOMB_COUPLING: f64 =
    ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (4.0 * PI * VACUUM_PERMITTIVITY);

/// Constants bundle carried by an [`crate::IonPair`].
///
/// Fixed to CODATA values at construction; kept as data so tests can confirm
/// positivity instead of trusting globals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħ, J s.
    pub hbar: f64,
    /// e²/(4πε₀), N m².
    pub coulomb_coupling: f64,
    /// u, kg.
    pub atomic_mass_unit: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: HBAR,
            coulomb_coupling: COULOMB_COUPLING,
            atomic_mass_unit: ATOMIC_MASS_KG,
        }
    }
}

impl PhysicalConstants {
    pub fn is_valid(&self) -> bool {
        self.hbar > 0.0 && self.coulomb_coupling > 0.0 && self.atomic_mass_unit > 0.0
    }
}

/// Integer-u masses for the alkaline-earth species used throughout.
///
/// Bare names resolve to the isotopes of the equal-mass force table
/// (Be→9, Mg→24, Ca→40, Sr→88, Ba→138); isotope-qualified names such as
/// `Mg25` select a specific mass number (the Be–Mg mixed pair uses ²⁵Mg).
pub fn species_mass_amu(name: &str) -> Option<f64> {
    let m = match name {
        "Be" | "Be9" | "be" | "be9" => 9.0,
        "Mg" | "Mg24" | "mg" | "mg24" => 24.0,
        "Mg25" | "mg25" => 25.0,
        "Ca" | "Ca40" | "ca" | "ca40" => 40.0,
        "Sr" | "Sr88" | "sr" | "sr88" => 88.0,
        "Ba" | "Ba138" | "ba" | "ba138" => 138.0,
        _ => return None,
    };
    Some(m)
}
