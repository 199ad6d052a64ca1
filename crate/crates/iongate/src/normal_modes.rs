//! Two-ion equilibrium geometry, normal modes, and force transforms.
//!
//! Two ions of charge e sit in a common harmonic well with spring constant
//! u₀ = m₁ω₁² = m₂ω₂², coupled by Coulomb repulsion. Ion 1 (the lighter one,
//! μ = m₂/m₁ ≥ 1) is on the left: x₁ < x₂ always. Everything here is in
//! natural units of ion 1 (ħ = m₁ = ω₁ = 1) unless a method name says `si`.

use crate::constants::PhysicalConstants;
use crate::error::DesignError;
use crate::units::Units;
use serde::Serialize;

/// The physical pair under control: masses, trap frequency, constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonPair {
    m1: f64,
    mass_ratio: f64,
    omega1: f64,
    constants: PhysicalConstants,
}

impl IonPair {
    /// Build from SI masses (kg) and the trap frequency of ion 1 (rad/s).
    ///
    /// Enforces μ = m₂/m₁ ≥ 1 structurally: the lighter ion is ion 1.
    pub fn new(m1_kg: f64, m2_kg: f64, omega1: f64) -> Result<Self, DesignError> {
        if !(m1_kg > 0.0 && m2_kg > 0.0 && omega1 > 0.0) {
            return Err(DesignError::InvalidMassRatio(m2_kg / m1_kg));
        }
        let mu = m2_kg / m1_kg;
        if mu < 1.0 {
            return Err(DesignError::InvalidMassRatio(mu));
        }
        Ok(Self {
            m1: m1_kg,
            mass_ratio: mu,
            omega1,
            constants: PhysicalConstants::default(),
        })
    }

    /// Build from masses in atomic mass units.
    pub fn from_amu(m1_amu: f64, m2_amu: f64, omega1: f64) -> Result<Self, DesignError> {
        let c = PhysicalConstants::default();
        Self::new(m1_amu * c.atomic_mass_unit, m2_amu * c.atomic_mass_unit, omega1)
    }

    /// Two ions of the same species.
    pub fn equal(m_kg: f64, omega1: f64) -> Result<Self, DesignError> {
        Self::new(m_kg, m_kg, omega1)
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m1 * self.mass_ratio
    }

    /// μ = m₂/m₁, stored exactly as supplied.
    pub fn mass_ratio(&self) -> f64 {
        self.mass_ratio
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega2(&self) -> f64 {
        self.omega1 / self.mass_ratio.sqrt()
    }

    /// Common spring constant u₀ = m₁ω₁² (N/m).
    pub fn spring_constant(&self) -> f64 {
        self.m1 * self.omega1 * self.omega1
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn units(&self) -> Units {
        Units::new(self.m1, self.omega1, &self.constants)
    }

    /// Cc in natural units.
    pub fn coulomb_natural(&self) -> f64 {
        self.units().coulomb_natural(&self.constants)
    }
}

/// Equilibrium positions and energy offset, natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumGeometry {
    /// Ion-1 equilibrium x₁⁽⁰⁾ < 0.
    pub x1: f64,
    /// Ion-2 equilibrium x₂⁽⁰⁾ = −x₁⁽⁰⁾.
    pub x2: f64,
    /// Separation x₀ = x₂⁽⁰⁾ − x₁⁽⁰⁾.
    pub separation: f64,
    /// E₀ = 3u₀x₀²/4, subtracted so the potential minimum sits at zero.
    pub energy_offset: f64,
}

impl EquilibriumGeometry {
    pub fn separation_si(&self, units: &Units) -> f64 {
        self.separation * units.length
    }
}

/// Equilibrium of ½u₀x₁² + ½u₀x₂² + Cc/(x₂−x₁): x₁⁽⁰⁾ = −(Cc/4u₀)^(1/3).
pub fn equilibrium_config(ions: &IonPair) -> EquilibriumGeometry {
    let cc = ions.coulomb_natural();
    // natural u0 = 1
    let x2 = (cc / 4.0).cbrt();
    let separation = 2.0 * x2;
    EquilibriumGeometry {
        x1: -x2,
        x2,
        separation,
        energy_offset: 0.75 * separation * separation,
    }
}

/// Normal-mode frequencies (units of ω₁) and orthonormal mode vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalModeBasis {
    /// Frequency-squared eigenvalues λ± of the mass-scaled curvature matrix.
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Ω± = √λ±, with Ω₊ > Ω₋.
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub a_plus: f64,
    pub b_plus: f64,
    pub a_minus: f64,
    pub b_minus: f64,
}

/// λ± = ω₁²[1 + 1/μ ± √(1 − 1/μ + 1/μ²)], returned as (Ω₊, Ω₋) in ω₁ units.
pub fn mode_frequencies(ions: &IonPair) -> (f64, f64) {
    let inv = 1.0 / ions.mass_ratio();
    let s = (1.0 - inv + inv * inv).sqrt();
    ((1.0 + inv + s).sqrt(), (1.0 + inv - s).sqrt())
}

/// Mode vectors v± = (a±, b±) and frequencies.
pub fn mode_vectors(ions: &IonPair) -> NormalModeBasis {
    let mu = ions.mass_ratio();
    let inv = 1.0 / mu;
    let s = (1.0 - inv + inv * inv).sqrt();
    let lambda_plus = 1.0 + inv + s;
    let lambda_minus = 1.0 + inv - s;
    let gp = 1.0 - inv - s;
    let gm = 1.0 - inv + s;
    let a_plus = (1.0 / (1.0 + gp * gp * mu)).sqrt();
    let b_plus = gp * mu.sqrt() * a_plus;
    let a_minus = (1.0 / (1.0 + gm * gm * mu)).sqrt();
    let b_minus = gm * mu.sqrt() * a_minus;
    NormalModeBasis {
        lambda_plus,
        lambda_minus,
        omega_plus: lambda_plus.sqrt(),
        omega_minus: lambda_minus.sqrt(),
        a_plus,
        b_plus,
        a_minus,
        b_minus,
    }
}

/// Mass-weighted normal-mode coordinates of a lab-frame configuration.
///
/// sx± = a±√m₁(x₁−x₁⁽⁰⁾) + b±√(μm₁)(x₂−x₂⁽⁰⁾), natural m₁ = 1.
pub fn lab_to_modes(
    x1: f64,
    x2: f64,
    ions: &IonPair,
    geom: &EquilibriumGeometry,
    basis: &NormalModeBasis,
) -> (f64, f64) {
    let rmu = ions.mass_ratio().sqrt();
    let d1 = x1 - geom.x1;
    let d2 = x2 - geom.x2;
    (
        basis.a_plus * d1 + basis.b_plus * rmu * d2,
        basis.a_minus * d1 + basis.b_minus * rmu * d2,
    )
}

/// Inverse of [`lab_to_modes`]:
/// x₁ = (b₋sx₊ − b₊sx₋)/√m₁ − x₀/2, x₂ = (−a₋sx₊ + a₊sx₋)/√(μm₁) + x₀/2.
pub fn modes_to_lab(
    sx_plus: f64,
    sx_minus: f64,
    ions: &IonPair,
    geom: &EquilibriumGeometry,
    basis: &NormalModeBasis,
) -> (f64, f64) {
    let rmu = ions.mass_ratio().sqrt();
    (
        basis.b_minus * sx_plus - basis.b_plus * sx_minus - 0.5 * geom.separation,
        (-basis.a_minus * sx_plus + basis.a_plus * sx_minus) / rmu + 0.5 * geom.separation,
    )
}

/// Normal-mode force components for instantaneous lab forces (F₁, F₂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeForces {
    /// f₊ = −F₁b₋/√m₁ + F₂a₋/√(μm₁).
    pub f_plus: f64,
    /// f₋ = F₁b₊/√m₁ − F₂a₊/√(μm₁).
    pub f_minus: f64,
    /// Spin-dependent energy-rate term f̃ = (x₀/2)(F₂ − F₁).
    pub f_tilde: f64,
}

/// Map instantaneous spin-dependent lab forces to mode forces (all natural).
pub fn spin_forces_to_mode_forces(
    f1: f64,
    f2: f64,
    ions: &IonPair,
    basis: &NormalModeBasis,
    geom: &EquilibriumGeometry,
) -> ModeForces {
    let rmu = ions.mass_ratio().sqrt();
    ModeForces {
        f_plus: -f1 * basis.b_minus + f2 * basis.a_minus / rmu,
        f_minus: f1 * basis.b_plus - f2 * basis.a_plus / rmu,
        f_tilde: 0.5 * geom.separation * (f2 - f1),
    }
}
