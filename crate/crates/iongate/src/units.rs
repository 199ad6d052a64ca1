//! Natural-unit system anchored to ion 1.
//!
//! Internally everything is computed with ħ = 1, m₁ = 1, ω₁ = 1. The scale
//! factors below convert natural values to SI by multiplication (and back by
//! division). Keeping phase-sensitive arithmetic in O(1) numbers avoids the
//! zeptonewton/micrometre/megahertz magnitude spread of the raw problem.

use crate::constants::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    /// m₁ in kg.
    pub mass: f64,
    /// ω₁ in rad/s.
    pub frequency: f64,
    /// √(ħ/(m₁ω₁)) in m — oscillator length of ion 1.
    pub length: f64,
    /// 1/ω₁ in s.
    pub time: f64,
    /// ħω₁ in J.
    pub energy: f64,
    /// √(ħ m₁ ω₁³) in N.
    pub force: f64,
    /// √(ħ/ω₁) in kg^(1/2) m — scale of mass-weighted coordinates.
    pub mass_weighted_length: f64,
}

impl Units {
    pub fn new(m1: f64, omega1: f64, consts: &PhysicalConstants) -> Self {
        let hbar = consts.hbar;
        Self {
            mass: m1,
            frequency: omega1,
            length: (hbar / (m1 * omega1)).sqrt(),
            time: 1.0 / omega1,
            energy: hbar * omega1,
            force: (hbar * m1 * omega1.powi(3)).sqrt(),
            mass_weighted_length: (hbar / omega1).sqrt(),
        }
    }

    pub fn time_to_natural(&self, t_si: f64) -> f64 {
        t_si / self.time
    }

    pub fn time_to_si(&self, t_nat: f64) -> f64 {
        t_nat * self.time
    }

    pub fn length_to_si(&self, x_nat: f64) -> f64 {
        x_nat * self.length
    }

    pub fn force_to_si(&self, f_nat: f64) -> f64 {
        f_nat * self.force
    }

    /// Coulomb coupling Cc in natural units (energy × length).
    pub fn coulomb_natural(&self, consts: &PhysicalConstants) -> f64 {
        consts.coulomb_coupling / (self.energy * self.length)
    }
}
