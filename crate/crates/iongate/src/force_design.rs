//! Inverse engineering of smooth state-dependent forces.
//!
//! The mode trajectory ansatz is a four-term odd-harmonic cosine series
//! α(t) = Σₙ aₙ cos[(2n−1)πt/t_f]. Boundary conditions at t = 0, t_f fix
//! a₀…a₂, the rest-condition of the second mode fixes a₃, and the target
//! differential phase γ fixes a₄. One builder covers equal masses, distinct
//! masses, arbitrary force ratios, and the alternative inversion schemes;
//! the published closed forms for the standard scheme are kept as test
//! oracles against this pipeline.
//!
//! Natural units (ħ = m₁ = ω₁ = 1) throughout; `_si` methods convert.

use crate::error::DesignError;
use crate::normal_modes::{equilibrium_config, mode_vectors, EquilibriumGeometry, IonPair, NormalModeBasis};
use crate::units::Units;
use serde::Serialize;
use std::f64::consts::PI;

/// Fractional distance from a critical time below which designs are refused.
pub const CRITICAL_TIME_GUARD: f64 = 0.01;

/// Joint spin configuration of the two qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpinConfig {
    UpUp,
    UpDown,
    DownUp,
    DownDown,
}

impl SpinConfig {
    pub const ALL: [SpinConfig; 4] = [
        SpinConfig::UpUp,
        SpinConfig::UpDown,
        SpinConfig::DownUp,
        SpinConfig::DownDown,
    ];

    pub fn sigma1(self) -> f64 {
        match self {
            SpinConfig::UpUp | SpinConfig::UpDown => 1.0,
            _ => -1.0,
        }
    }

    pub fn sigma2(self) -> f64 {
        match self {
            SpinConfig::UpUp | SpinConfig::DownUp => 1.0,
            _ => -1.0,
        }
    }

    pub fn is_antiparallel(self) -> bool {
        matches!(self, SpinConfig::UpDown | SpinConfig::DownUp)
    }

    fn index(self) -> usize {
        match self {
            SpinConfig::UpUp => 0,
            SpinConfig::UpDown => 1,
            SpinConfig::DownUp => 2,
            SpinConfig::DownDown => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Plus,
    Minus,
}

/// Which mode/configuration carries the ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InversionVariant {
    /// Ansatz on the stretch (+) mode of the antiparallel configuration;
    /// the COM mode stays dark there. The standard scheme.
    StretchAnsatz,
    /// Ansatz on the COM (−) mode instead; the stretch mode stays dark.
    ComAnsatz,
    /// Ansatz on the stretch mode of the *parallel* configuration. Same
    /// pipeline with configuration roles swapped; the feasible sign of γ
    /// flips relative to `StretchAnsatz` on every t_f interval.
    ParallelFirst,
}

/// Proportionality between spin-up and spin-down forces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ForceRatio {
    /// F_i = σᵢᶻ F(t) — opposite equal-magnitude forces (c₁ = c₂ = −1).
    Symmetric,
    /// Equal masses, one laser for both ions: F_i(↑) = −c F̃, F_i(↓) = −F̃.
    SharedLaser { c: f64 },
    /// Independent per-ion ratios: F₁(↑) = −c₁F̃_a, F₁(↓) = −F̃_a, and
    /// likewise c₂, F̃_b for ion 2.
    Independent { c1: f64, c2: f64 },
}

impl ForceRatio {
    fn cs(self) -> (f64, f64) {
        match self {
            ForceRatio::Symmetric => (-1.0, -1.0),
            ForceRatio::SharedLaser { c } => (c, c),
            ForceRatio::Independent { c1, c2 } => (c1, c2),
        }
    }
}

/// Truncated odd-harmonic cosine series Σₙ cₙ cos[(2n−1)πt/t_f].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeSeries {
    pub tf: f64,
    pub coeffs: [f64; 4],
}

impl ModeSeries {
    fn nu(&self, n: usize) -> f64 {
        (2 * n + 1) as f64 * PI / self.tf
    }

    pub fn value(&self, t: f64) -> f64 {
        (0..4).map(|n| self.coeffs[n] * (self.nu(n) * t).cos()).sum()
    }

    pub fn deriv(&self, t: f64) -> f64 {
        (0..4)
            .map(|n| -self.coeffs[n] * self.nu(n) * (self.nu(n) * t).sin())
            .sum()
    }

    pub fn accel(&self, t: f64) -> f64 {
        (0..4)
            .map(|n| -self.coeffs[n] * self.nu(n) * self.nu(n) * (self.nu(n) * t).cos())
            .sum()
    }

    /// The drive that produces this trajectory at mode frequency Ω:
    /// f = α̈ + Ω²α, again an odd-harmonic cosine series.
    pub fn drive_series(&self, omega: f64) -> ModeSeries {
        let mut coeffs = [0.0; 4];
        for n in 0..4 {
            let nu = self.nu(n);
            coeffs[n] = self.coeffs[n] * (omega * omega - nu * nu);
        }
        ModeSeries { tf: self.tf, coeffs }
    }

    fn scaled(&self, k: f64) -> ModeSeries {
        let mut coeffs = self.coeffs;
        for c in &mut coeffs {
            *c *= k;
        }
        ModeSeries { tf: self.tf, coeffs }
    }

    pub fn max_abs(&self, samples: usize) -> f64 {
        (0..=samples)
            .map(|i| self.value(self.tf * i as f64 / samples as f64).abs())
            .fold(0.0, f64::max)
    }
}

/// Ansatz coefficient record a₁…a₄ (a₀ = 0 always).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnsatzCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

/// Durations at which the phase-fixing denominator vanishes and the forces
/// diverge, in natural time units (multiples of 1/ω₁).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalTimes {
    pub t1: f64,
    pub t2: f64,
    /// δ = √(7(2023Ω₋⁴ − 8846Ω₋²Ω₊² + 2023Ω₊⁴)), rad²/s² in ω₁² units.
    pub delta: f64,
}

impl CriticalTimes {
    pub fn t1_si(&self, units: &Units) -> f64 {
        self.t1 * units.time
    }

    pub fn t2_si(&self, units: &Units) -> f64 {
        self.t2 * units.time
    }
}

/// Critical gate durations for a mode basis, if any exist.
///
/// Mass ratios below ≈2.35 (equal masses included) have none: the quartic in
/// t_f stays sign-definite and every duration admits a γ < 0 design.
pub fn critical_times(basis: &NormalModeBasis) -> Result<Option<CriticalTimes>, DesignError> {
    let (wp2, wm2) = (basis.lambda_plus, basis.lambda_minus);
    if wp2 == wm2 {
        return Err(DesignError::DegenerateModes);
    }
    let d2 = 7.0 * (2023.0 * (wm2 * wm2 + wp2 * wp2) - 8846.0 * wm2 * wp2);
    if d2 <= 0.0 {
        return Ok(None);
    }
    let delta = d2.sqrt();
    let s = 119.0 * (wm2 + wp2);
    let den = 22.0 * wm2 * wp2;
    Ok(Some(CriticalTimes {
        t1: PI * ((s - delta) / den).sqrt(),
        t2: PI * ((s + delta) / den).sqrt(),
        delta,
    }))
}

/// Sign-carrying phase-fixing denominator Δ(t_f) of the standard scheme.
pub fn phase_denominator(basis: &NormalModeBasis, mu: f64, tf: f64) -> f64 {
    let (wp2, wm2) = (basis.lambda_plus, basis.lambda_minus);
    6.0 * mu
        * (basis.omega_minus - basis.omega_plus)
        * (basis.omega_minus + basis.omega_plus)
        * tf
        * (2051.0 * PI.powi(4) + 11.0 * tf.powi(4) * wm2 * wp2
            - 119.0 * PI * PI * tf * tf * (wm2 + wp2))
}

/// A complete gate design: mode trajectories for every spin configuration
/// plus the control forces realizing them.
#[derive(Debug, Clone)]
pub struct GateDesign {
    ions: IonPair,
    geom: EquilibriumGeometry,
    basis: NormalModeBasis,
    tf: f64,
    gamma: f64,
    variant: InversionVariant,
    ratio: ForceRatio,
    base_config: SpinConfig,
    base_mode: Mode,
    series_plus: ModeSeries,
    series_minus: ModeSeries,
    drive: ModeSeries,
    k_plus: [f64; 4],
    k_minus: [f64; 4],
    /// F̃_a(t) = fa_scale · drive(t).
    fa_scale: f64,
    /// F̃_b(t) = fb_over_fa · F̃_a(t).
    fb_over_fa: f64,
    critical: Option<CriticalTimes>,
}

fn phi_factor(c: f64, sigma: f64) -> f64 {
    if sigma > 0.0 {
        -c
    } else {
        -1.0
    }
}

fn build_design(
    ions: &IonPair,
    tf: f64,
    gamma_req: Option<f64>,
    variant: InversionVariant,
    ratio: ForceRatio,
) -> Result<GateDesign, DesignError> {
    if !(tf > 0.0) || !tf.is_finite() {
        return Err(DesignError::InvalidDuration(tf));
    }
    let mu = ions.mass_ratio();
    let (c1, c2) = ratio.cs();
    match ratio {
        ForceRatio::SharedLaser { c } => {
            if mu != 1.0 {
                return Err(DesignError::DegenerateRatio(
                    "shared-laser ratio requires equal masses".into(),
                ));
            }
            if c == 1.0 {
                return Err(DesignError::DegenerateRatio(
                    "c = 1 makes the antiparallel drive vanish".into(),
                ));
            }
        }
        ForceRatio::Independent { c1, c2 } => {
            if c1 == 0.0 || c1 == 1.0 || c2 == 1.0 {
                return Err(DesignError::DegenerateRatio(format!(
                    "ratios (c1, c2) = ({c1}, {c2}) are degenerate"
                )));
            }
            let c_sq = -4.0 * c1 / ((c1 - 1.0) * (c2 - 1.0));
            if c_sq <= 0.0 {
                return Err(DesignError::NonRealScaling(c_sq));
            }
        }
        ForceRatio::Symmetric => {}
    }

    let geom = equilibrium_config(ions);
    let basis = mode_vectors(ions);
    let units = ions.units();
    let critical = critical_times(&basis)?;
    if let Some(ct) = critical {
        for t_crit in [ct.t1, ct.t2] {
            if (tf - t_crit).abs() < CRITICAL_TIME_GUARD * t_crit {
                return Err(DesignError::CriticalTimeProximity {
                    requested_us: tf * units.time * 1e6,
                    t1_us: ct.t1 * units.time * 1e6,
                    t2_us: ct.t2 * units.time * 1e6,
                    guard_percent: CRITICAL_TIME_GUARD * 100.0,
                });
            }
        }
    }

    let (base_mode, base_config) = match variant {
        InversionVariant::StretchAnsatz => (Mode::Plus, SpinConfig::UpDown),
        InversionVariant::ComAnsatz => (Mode::Minus, SpinConfig::UpDown),
        InversionVariant::ParallelFirst => (Mode::Plus, SpinConfig::UpUp),
    };
    let (omega_base, omega_other) = match base_mode {
        Mode::Plus => (basis.omega_plus, basis.omega_minus),
        Mode::Minus => (basis.omega_minus, basis.omega_plus),
    };

    // unit-amplitude series in the cancelled form: both the ansatz mode and
    // the derived mode are plain cosine series with weights
    // w(Ω) = [5u₁, −9u₂, 5u₃, −u₄], uₙ = Ω² − νₙ². No resonant divisions.
    let weights = |omega: f64| -> [f64; 4] {
        let u = |n: usize| {
            let nu = (2 * n + 1) as f64 * PI / tf;
            omega * omega - nu * nu
        };
        [5.0 * u(0), -9.0 * u(1), 5.0 * u(2), -u(3)]
    };
    let tf2 = tf * tf;
    let unit_base = ModeSeries {
        tf,
        coeffs: weights(omega_other).map(|w| tf2 * w),
    };
    let unit_other = ModeSeries {
        tf,
        coeffs: weights(omega_base).map(|w| tf2 * w),
    };
    let unit_drive = unit_base.drive_series(omega_base);

    // exact phase integrals from cosine orthogonality:
    // ∫ f α dt = (t_f/2) Σ fₙ αₙ for distinct odd harmonics
    let i_bb: f64 = (0..4).map(|n| unit_drive.coeffs[n] * unit_base.coeffs[n]).sum::<f64>() * tf / 2.0;
    let i_bo: f64 = (0..4).map(|n| unit_drive.coeffs[n] * unit_other.coeffs[n]).sum::<f64>() * tf / 2.0;

    // mode-force coefficients of (F1, F2): f± = A± F1 + B± F2
    let rmu = mu.sqrt();
    let (a_plus, b_plus) = (-basis.b_minus, basis.a_minus / rmu);
    let (a_minus, b_minus) = (basis.b_plus, -basis.a_plus / rmu);
    let (ab_base, bb_base, ab_other, bb_other) = match base_mode {
        Mode::Plus => (a_plus, b_plus, a_minus, b_minus),
        Mode::Minus => (a_minus, b_minus, a_plus, b_plus),
    };
    let s1b = base_config.sigma1();
    let s2b = base_config.sigma2();
    // F̃_b/F̃_a: silent other mode in the base configuration, except for the
    // shared-laser case where the same control acts on both ions
    let rho = match ratio {
        ForceRatio::SharedLaser { .. } => 1.0,
        _ => -ab_other * phi_factor(c1, s1b) / (bb_other * phi_factor(c2, s2b)),
    };
    let d_base = ab_base * phi_factor(c1, s1b) + bb_base * phi_factor(c2, s2b) * rho;
    if d_base.abs() < 1e-300 {
        return Err(DesignError::DegenerateRatio(
            "base-configuration drive vanishes for this ratio".into(),
        ));
    }

    let mut k_plus = [0.0; 4];
    let mut k_minus = [0.0; 4];
    for cfg in SpinConfig::ALL {
        let p1 = phi_factor(c1, cfg.sigma1());
        let p2 = phi_factor(c2, cfg.sigma2());
        k_plus[cfg.index()] = (a_plus * p1 + b_plus * p2 * rho) / d_base;
        k_minus[cfg.index()] = (a_minus * p1 + b_minus * p2 * rho) / d_base;
    }
    let (k_base, k_other): (&[f64; 4], &[f64; 4]) = match base_mode {
        Mode::Plus => (&k_plus, &k_minus),
        Mode::Minus => (&k_minus, &k_plus),
    };

    // differential-phase coefficient per unit amplitude squared
    let eps = |cfg: SpinConfig| if cfg.is_antiparallel() { 1.0 } else { -1.0 };
    let kb2: f64 = SpinConfig::ALL.iter().map(|&s| eps(s) * k_base[s.index()].powi(2)).sum();
    let ko2: f64 = SpinConfig::ALL.iter().map(|&s| eps(s) * k_other[s.index()].powi(2)).sum();
    let dphi_unit = 0.5 * (kb2 * i_bb + ko2 * i_bo);

    let gamma = gamma_req.unwrap_or_else(|| PI.copysign(dphi_unit));
    if gamma == 0.0 || gamma.signum() != dphi_unit.signum() {
        return Err(DesignError::NonRealCoefficient {
            gamma,
            required: dphi_unit.signum(),
        });
    }
    // positive root; the negative branch only flips the sign of α and F
    let amplitude = (gamma / dphi_unit).sqrt();

    let (series_plus, series_minus) = match base_mode {
        Mode::Plus => (unit_base.scaled(amplitude), unit_other.scaled(amplitude)),
        Mode::Minus => (unit_other.scaled(amplitude), unit_base.scaled(amplitude)),
    };
    Ok(GateDesign {
        ions: *ions,
        geom,
        basis,
        tf,
        gamma,
        variant,
        ratio,
        base_config,
        base_mode,
        series_plus,
        series_minus,
        drive: unit_drive.scaled(amplitude),
        k_plus,
        k_minus,
        fa_scale: 1.0 / d_base,
        fb_over_fa: rho,
        critical,
    })
}

/// Design the symmetric equal-mass gate: F_i = σᵢᶻ F(t).
///
/// `tf_si` in seconds; `gamma` must be negative (the phase denominator is
/// negative for every duration at equal masses).
pub fn design_equal_mass(ions: &IonPair, tf_si: f64, gamma: f64) -> Result<GateDesign, DesignError> {
    if ions.mass_ratio() != 1.0 {
        return Err(DesignError::NotEqualMass(ions.mass_ratio()));
    }
    let tf = ions.units().time_to_natural(tf_si);
    build_design(ions, tf, Some(gamma), InversionVariant::StretchAnsatz, ForceRatio::Symmetric)
}

/// Design a gate for an arbitrary mass ratio with F₁ = σ₁ᶻF_a, F₂ = σ₂ᶻF_b.
///
/// `gamma`: `None` picks ∓π automatically from the sign of the phase
/// denominator on the requested interval; an explicit value must carry the
/// feasible sign (any magnitude is accepted for generalized gates).
pub fn design_different_mass(
    ions: &IonPair,
    tf_si: f64,
    gamma: Option<f64>,
    variant: InversionVariant,
) -> Result<GateDesign, DesignError> {
    let tf = ions.units().time_to_natural(tf_si);
    build_design(ions, tf, gamma, variant, ForceRatio::Symmetric)
}

/// Re-derive a design under a different force ratio, keeping t_f, γ and the
/// inversion variant. The ansatz amplitude rescales so the differential
/// phase is unchanged.
pub fn apply_force_ratio(design: &GateDesign, ratio: ForceRatio) -> Result<GateDesign, DesignError> {
    build_design(&design.ions, design.tf, Some(design.gamma), design.variant, ratio)
}

impl GateDesign {
    pub fn ions(&self) -> &IonPair {
        &self.ions
    }

    pub fn geometry(&self) -> &EquilibriumGeometry {
        &self.geom
    }

    pub fn basis(&self) -> &NormalModeBasis {
        &self.basis
    }

    pub fn units(&self) -> Units {
        self.ions.units()
    }

    /// Gate duration, natural units.
    pub fn tf(&self) -> f64 {
        self.tf
    }

    pub fn tf_si(&self) -> f64 {
        self.tf * self.units().time
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn variant(&self) -> InversionVariant {
        self.variant
    }

    pub fn ratio(&self) -> ForceRatio {
        self.ratio
    }

    pub fn critical_times(&self) -> Option<CriticalTimes> {
        self.critical
    }

    /// Configuration whose silent mode anchored the inversion.
    pub fn base_config(&self) -> SpinConfig {
        self.base_config
    }

    pub fn ansatz_coefficients(&self) -> AnsatzCoefficients {
        let c = match self.base_mode {
            Mode::Plus => self.series_plus.coeffs,
            Mode::Minus => self.series_minus.coeffs,
        };
        AnsatzCoefficients { a1: c[0], a2: c[1], a3: c[2], a4: c[3] }
    }

    /// Flip the sign branch of the ansatz amplitude (flips α and F only).
    pub fn negative_branch(mut self) -> Self {
        self.series_plus = self.series_plus.scaled(-1.0);
        self.series_minus = self.series_minus.scaled(-1.0);
        self.drive = self.drive.scaled(-1.0);
        self
    }

    fn check_t(&self, t: f64) -> Result<(), DesignError> {
        if !(0.0..=self.tf * (1.0 + 1e-12)).contains(&t) {
            return Err(DesignError::OutOfRange { t, tf: self.tf });
        }
        Ok(())
    }

    fn k(&self, cfg: SpinConfig, mode: Mode) -> f64 {
        match mode {
            Mode::Plus => self.k_plus[cfg.index()],
            Mode::Minus => self.k_minus[cfg.index()],
        }
    }

    fn series(&self, mode: Mode) -> &ModeSeries {
        match mode {
            Mode::Plus => &self.series_plus,
            Mode::Minus => &self.series_minus,
        }
    }

    /// Mode trajectory α(cfg, mode; t), mass-weighted natural units.
    pub fn alpha(&self, cfg: SpinConfig, mode: Mode, t: f64) -> Result<f64, DesignError> {
        self.check_t(t)?;
        Ok(self.alpha_unchecked(cfg, mode, t))
    }

    pub fn alpha_unchecked(&self, cfg: SpinConfig, mode: Mode, t: f64) -> f64 {
        self.k(cfg, mode) * self.series(mode).value(t)
    }

    pub fn alpha_dot_unchecked(&self, cfg: SpinConfig, mode: Mode, t: f64) -> f64 {
        self.k(cfg, mode) * self.series(mode).deriv(t)
    }

    pub fn alpha_ddot_unchecked(&self, cfg: SpinConfig, mode: Mode, t: f64) -> f64 {
        self.k(cfg, mode) * self.series(mode).accel(t)
    }

    /// Normal-mode force f(cfg, mode; t), natural units.
    pub fn mode_force(&self, cfg: SpinConfig, mode: Mode, t: f64) -> f64 {
        self.k(cfg, mode) * self.drive.value(t)
    }

    /// Ion-1 control amplitude F̃_a(t), natural units (F₁ = φ₁(σ₁)F̃_a).
    pub fn force_a(&self, t: f64) -> f64 {
        self.fa_scale * self.drive.value(t)
    }

    /// Ion-2 control amplitude F̃_b(t), natural units.
    pub fn force_b(&self, t: f64) -> f64 {
        self.fb_over_fa * self.force_a(t)
    }

    /// Lab force on ion 1 in configuration `cfg`, natural units.
    pub fn lab_force1(&self, cfg: SpinConfig, t: f64) -> f64 {
        let (c1, _) = self.ratio.cs();
        phi_factor(c1, cfg.sigma1()) * self.force_a(t)
    }

    /// Lab force on ion 2 in configuration `cfg`, natural units.
    pub fn lab_force2(&self, cfg: SpinConfig, t: f64) -> f64 {
        let (_, c2) = self.ratio.cs();
        phi_factor(c2, cfg.sigma2()) * self.force_b(t)
    }

    pub fn force_a_si(&self, t_si: f64) -> f64 {
        let u = self.units();
        u.force_to_si(self.force_a(u.time_to_natural(t_si)))
    }

    pub fn force_b_si(&self, t_si: f64) -> f64 {
        let u = self.units();
        u.force_to_si(self.force_b(u.time_to_natural(t_si)))
    }

    /// Phase accumulated by configuration `cfg`, φ = (1/2ħ)∫(f₊α₊ + f₋α₋)dt,
    /// evaluated exactly through cosine orthogonality.
    pub fn phase(&self, cfg: SpinConfig) -> f64 {
        let mut phi = 0.0;
        for (mode, omega) in [(Mode::Plus, self.basis.omega_plus), (Mode::Minus, self.basis.omega_minus)] {
            let k = self.k(cfg, mode);
            let s = self.series(mode);
            let d = s.drive_series(omega);
            let i: f64 = (0..4).map(|n| d.coeffs[n] * s.coeffs[n]).sum::<f64>() * self.tf / 2.0;
            phi += 0.5 * k * k * i;
        }
        phi
    }

    /// Differential phase Δφ = φ(↑↓) + φ(↓↑) − φ(↑↑) − φ(↓↓).
    pub fn delta_phi(&self) -> f64 {
        self.phase(SpinConfig::UpDown) + self.phase(SpinConfig::DownUp)
            - self.phase(SpinConfig::UpUp)
            - self.phase(SpinConfig::DownDown)
    }

    /// Differential phase from the published closed form of the standard
    /// scheme: Δφ = a₄²Δ/[(1 + (μ−1)μ)(t_f²Ω₋² − 49π²)²]. Falls back to the
    /// exact harmonic sum for the alternative inversion variants.
    pub fn delta_phi_closed_form(&self) -> f64 {
        if self.variant != InversionVariant::StretchAnsatz {
            return self.delta_phi();
        }
        let mu = self.ions.mass_ratio();
        // the closed form is stated for the symmetric ratio; the amplitude
        // rescaling of general ratios cancels in Δφ, so reuse a₄(−1,−1)
        let a4 = match self.ratio {
            ForceRatio::Symmetric => self.ansatz_coefficients().a4,
            _ => {
                let (c1, c2) = self.ratio.cs();
                let c_sq = match self.ratio {
                    ForceRatio::SharedLaser { .. } => 1.0,
                    _ => -4.0 * c1 / ((c1 - 1.0) * (c2 - 1.0)),
                };
                self.ansatz_coefficients().a4 / c_sq.sqrt()
            }
        };
        let wm2 = self.basis.lambda_minus;
        let denom = (1.0 + (mu - 1.0) * mu) * (self.tf * self.tf * wm2 - 49.0 * PI * PI).powi(2);
        a4 * a4 * phase_denominator(&self.basis, mu, self.tf) / denom
    }

    /// Peak |F̃_a| in newtons (golden-section refinement of a dense scan).
    pub fn max_force_a_si(&self) -> f64 {
        let n = 4096usize;
        let mut best_i = 0usize;
        let mut best = 0.0;
        for i in 0..=n {
            let v = self.force_a(self.tf * i as f64 / n as f64).abs();
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let mut lo = self.tf * best_i.saturating_sub(1) as f64 / n as f64;
        let mut hi = self.tf * (best_i + 1).min(n) as f64 / n as f64;
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..80 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if self.force_a(m1).abs() > self.force_a(m2).abs() {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        self.units().force_to_si(self.force_a(0.5 * (lo + hi)).abs())
    }

    pub fn max_force_b_si(&self) -> f64 {
        self.max_force_a_si() * self.fb_over_fa.abs()
    }

    /// The closed-form force records for both controls.
    pub fn force_profile_a(&self) -> ForceProfile {
        ForceProfile::from_harmonics(
            self.tf_si(),
            self.drive.coeffs.map(|c| self.units().force_to_si(self.fa_scale * c)),
        )
    }

    pub fn force_profile_b(&self) -> ForceProfile {
        ForceProfile::from_harmonics(
            self.tf_si(),
            self.drive.coeffs.map(|c| self.units().force_to_si(self.fa_scale * self.fb_over_fa * c)),
        )
    }
}

/// Closed-form force record: F(t) = [g₁ + g₂cos(2πt/t_f) + g₃cos(4πt/t_f)]
/// × cos(πt/t_f) sin²(πt/t_f), with g₁…g₃ in newtons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForceProfile {
    pub tf_si: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    /// Equivalent odd-harmonic amplitudes (N): F = Σ hₙ cos[(2n−1)πt/t_f].
    pub harmonics: [f64; 4],
}

impl ForceProfile {
    fn from_harmonics(tf_si: f64, h: [f64; 4]) -> Self {
        // invert cos·sin² products: C1 = g1/4 − g3/8, C2 = −g1/4 + g2/8 + g3/8,
        // C3 = (g3 − g2)/8, C4 = −g3/8  (ΣCₙ = 0 holds because F(0) = 0)
        let g3 = -8.0 * h[3];
        let g2 = g3 - 8.0 * h[2];
        let g1 = 4.0 * h[0] + 0.5 * g3;
        Self { tf_si, g1, g2, g3, harmonics: h }
    }

    /// Force in newtons at `t_si` seconds.
    pub fn force_si(&self, t_si: f64) -> f64 {
        let x = PI * t_si / self.tf_si;
        (self.g1 + self.g2 * (2.0 * x).cos() + self.g3 * (4.0 * x).cos()) * x.cos() * x.sin().powi(2)
    }
}

/// ∫₀^{t_f} |F̃_a(t)| dt in N·s, by panel-adaptive quadrature split at the
/// sign changes of the force.
pub fn force_integral_proxy(design: &GateDesign) -> f64 {
    let u = design.units();
    let tf = design.tf();
    let n = 2048;
    let mut breaks = vec![0.0];
    let mut prev = design.force_a(0.0);
    for i in 1..=n {
        let t = tf * i as f64 / n as f64;
        let v = design.force_a(t);
        if prev * v < 0.0 {
            // bisect the sign change
            let (mut lo, mut hi) = (tf * (i - 1) as f64 / n as f64, t);
            for _ in 0..80 {
                let m = 0.5 * (lo + hi);
                if design.force_a(lo) * design.force_a(m) <= 0.0 {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            breaks.push(0.5 * (lo + hi));
        }
        if v != 0.0 {
            prev = v;
        }
    }
    breaks.push(tf);
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let v = crate::quadrature::integrate(|t| design.force_a(t).abs(), w[0], w[1], 0.0, 1e-9)
            .map(|r| r.value)
            .unwrap_or_else(|_| {
                // fall back to a fine fixed rule on pathological panels
                let m = 4096;
                (0..m)
                    .map(|i| {
                        let t = w[0] + (w[1] - w[0]) * (i as f64 + 0.5) / m as f64;
                        design.force_a(t).abs()
                    })
                    .sum::<f64>()
                    * (w[1] - w[0])
                    / m as f64
            });
        total += v;
    }
    total * u.force * u.time
}
