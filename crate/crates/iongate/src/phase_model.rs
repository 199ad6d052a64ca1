//! Lewis-Riesenfeld phases, phase decompositions, and driven trajectories.
//!
//! Everything here operates on closures in natural units: a mode frequency
//! Ω (in ω₁ units), a drive f(t), a trajectory α(t) with derivative α̇(t).
//! Phases come out in radians, unwrapped. `wrap_phase` maps to [0, 2π).

use crate::error::PhaseError;
use crate::quadrature::integrate;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Tolerance (absolute, natural units) for the phase quadratures.
pub const PHASE_TOL: f64 = 1e-12;

/// Map an unwrapped phase to [0, 2π).
pub fn wrap_phase(phi: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let r = phi % two_pi;
    if r < 0.0 {
        r + two_pi
    } else {
        r
    }
}

/// Time-sampled mass-weighted trajectory of one driven mode.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub y: Vec<f64>,
    pub ydot: Vec<f64>,
}

impl Trajectory {
    pub fn peak(&self) -> f64 {
        self.y.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn endpoint_residual(&self, omega: f64) -> f64 {
        let n = self.y.len() - 1;
        self.y[n].abs().max(self.ydot[n].abs() / omega)
    }
}

/// Propagate ÿ + Ω²y = f from z_g(0) = z0 by the rotating-frame integral
/// z_g(t) = e^{−iΩt}[z0 + (i/√(2Ω))∫₀ᵗ e^{iΩτ} f dτ], sampled on a uniform
/// grid of `samples + 1` points.
pub fn solve_forced_oscillator(
    f: &dyn Fn(f64) -> f64,
    omega: f64,
    z0: Complex64,
    tf: f64,
    samples: usize,
) -> Result<Trajectory, PhaseError> {
    let n = samples.max(2);
    let mut t = Vec::with_capacity(n + 1);
    let mut y = Vec::with_capacity(n + 1);
    let mut ydot = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    let pref = Complex64::new(0.0, 1.0) / (2.0 * omega).sqrt();
    for k in 0..=n {
        let tk = tf * k as f64 / n as f64;
        if k > 0 {
            let ta = tf * (k - 1) as f64 / n as f64;
            let re = integrate(|tau| (omega * tau).cos() * f(tau), ta, tk, PHASE_TOL, 0.0)?;
            let im = integrate(|tau| (omega * tau).sin() * f(tau), ta, tk, PHASE_TOL, 0.0)?;
            acc += Complex64::new(re.value, im.value);
        }
        let z = (Complex64::new(0.0, -omega * tk)).exp() * (z0 + pref * acc);
        t.push(tk);
        // z = Y + iP with Y = sqrt(Ω/2) y, P = ẏ/sqrt(2Ω)
        y.push(z.re * (2.0 / omega).sqrt());
        ydot.push(z.im * (2.0 * omega).sqrt());
    }
    Ok(Trajectory { t, y, ydot })
}

/// G(t_f) = (1/2ħ)∫(α̇² − Ω²α²)dt.
pub fn g_integral(
    alpha: &dyn Fn(f64) -> f64,
    alpha_dot: &dyn Fn(f64) -> f64,
    omega: f64,
    tf: f64,
) -> Result<f64, PhaseError> {
    Ok(0.5
        * integrate(
            |t| {
                let ad = alpha_dot(t);
                let a = alpha(t);
                ad * ad - omega * omega * a * a
            },
            0.0,
            tf,
            PHASE_TOL,
            0.0,
        )?
        .value)
}

/// Lewis-Riesenfeld phase θₙ(t_f) = −(n + ½)Ω t_f − G(t_f).
pub fn lewis_riesenfeld_phase(n: u32, omega: f64, tf: f64, g: f64) -> f64 {
    -(n as f64 + 0.5) * omega * tf - g
}

/// Gate phase of one configuration, φ = (1/2ħ)∫(f₊α₊ + f₋α₋)dt.
///
/// Errors with `BoundaryViolation` if either trajectory fails to start and
/// end at rest (relative residual 1e-6 of peak), since the single-integral
/// form is only valid under those conditions.
#[allow(clippy::too_many_arguments)]
pub fn gate_phase_single_integral(
    f_plus: &dyn Fn(f64) -> f64,
    alpha_plus: &dyn Fn(f64) -> f64,
    alpha_plus_dot: &dyn Fn(f64) -> f64,
    f_minus: &dyn Fn(f64) -> f64,
    alpha_minus: &dyn Fn(f64) -> f64,
    alpha_minus_dot: &dyn Fn(f64) -> f64,
    omegas: (f64, f64),
    tf: f64,
) -> Result<f64, PhaseError> {
    for (a, ad, om) in [
        (alpha_plus, alpha_plus_dot, omegas.0),
        (alpha_minus, alpha_minus_dot, omegas.1),
    ] {
        let mut peak = 0.0f64;
        for i in 0..=256 {
            peak = peak.max(a(tf * i as f64 / 256.0).abs());
        }
        let res = a(0.0).abs().max(a(tf).abs()).max(ad(0.0).abs() / om).max(ad(tf).abs() / om);
        if peak > 0.0 && res > 1e-6 * peak {
            return Err(PhaseError::BoundaryViolation { residual: res, peak });
        }
    }
    let ip = integrate(|t| f_plus(t) * alpha_plus(t), 0.0, tf, PHASE_TOL, 0.0)?;
    let im = integrate(|t| f_minus(t) * alpha_minus(t), 0.0, tf, PHASE_TOL, 0.0)?;
    Ok(0.5 * (ip.value + im.value))
}

/// Same phase from the double-integral representation,
/// φ = Σ_μ ∫₀^{t_f}dt′ ∫₀^{t′}dt″ f(t′)f(t″) sin[Ω(t′−t″)]/(2ħΩ),
/// by nested adaptive quadrature over the triangle.
pub fn gate_phase_double_integral(
    f_plus: &dyn Fn(f64) -> f64,
    f_minus: &dyn Fn(f64) -> f64,
    omegas: (f64, f64),
    tf: f64,
) -> Result<f64, PhaseError> {
    let mut total = 0.0;
    for (f, om) in [(f_plus, omegas.0), (f_minus, omegas.1)] {
        let inner_tol = PHASE_TOL;
        let outer = integrate(
            |tp| {
                let inner = integrate(
                    |ts| f(ts) * (om * (tp - ts)).sin(),
                    0.0,
                    tp,
                    inner_tol,
                    0.0,
                )
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
                f(tp) * inner / (2.0 * om)
            },
            0.0,
            tf,
            1e-10,
            0.0,
        )?;
        if !outer.value.is_finite() {
            return Err(PhaseError::QuadratureFailure { best_error: f64::NAN });
        }
        total += outer.value;
    }
    Ok(total)
}

/// The symmetrized full-square form of the double integral,
/// φ = Σ_μ ∫∫ f(t′)f(t″) sin(Ω|t′−t″|)/(4ħΩ) dt′dt″.
pub fn gate_phase_double_integral_square(
    f_plus: &dyn Fn(f64) -> f64,
    f_minus: &dyn Fn(f64) -> f64,
    omegas: (f64, f64),
    tf: f64,
) -> Result<f64, PhaseError> {
    let mut total = 0.0;
    for (f, om) in [(f_plus, omegas.0), (f_minus, omegas.1)] {
        let outer = integrate(
            |tp| {
                // split the inner integral at the |t' - t''| kink
                let left = integrate(|ts| f(ts) * (om * (tp - ts)).sin(), 0.0, tp, PHASE_TOL, 0.0)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                let right = integrate(|ts| f(ts) * (om * (ts - tp)).sin(), tp, tf, PHASE_TOL, 0.0)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                f(tp) * (left + right) / (4.0 * om)
            },
            0.0,
            tf,
            1e-10,
            0.0,
        )?;
        if !outer.value.is_finite() {
            return Err(PhaseError::QuadratureFailure { best_error: f64::NAN });
        }
        total += outer.value;
    }
    Ok(total)
}

/// Total/dynamical/geometric decomposition of a single-mode phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseBreakdown {
    /// Total phase φ = −G(t_f).
    pub total: f64,
    /// Dynamical phase φ_d = (1/ħ)∫ f⟨x⟩dt = 4𝒜.
    pub dynamical: f64,
    /// Geometric phase φ_g = φ − φ_d = −2𝒜.
    pub geometric: f64,
    /// Area swept in the rotating phase space.
    pub area: f64,
    /// G(t_f).
    pub g: f64,
}

/// Decompose the phase of one driven mode. `z0` is the initial phase-space
/// point of the trajectory used for ⟨x⟩; the result is z0-independent for
/// valid designs.
pub fn phase_decomposition(
    f: &dyn Fn(f64) -> f64,
    alpha: &dyn Fn(f64) -> f64,
    alpha_dot: &dyn Fn(f64) -> f64,
    omega: f64,
    z0: Complex64,
    tf: f64,
) -> Result<PhaseBreakdown, PhaseError> {
    let g = g_integral(alpha, alpha_dot, omega, tf)?;
    // ⟨x⟩ along the general trajectory: α(t) + real part of the free orbit
    let dynamical = integrate(
        |t| {
            let free = (Complex64::new(0.0, -omega * t)).exp() * z0;
            f(t) * (alpha(t) + (2.0 / omega).sqrt() * free.re)
        },
        0.0,
        tf,
        PHASE_TOL,
        0.0,
    )?
    .value;
    // rotating-frame area by trapezoidal shoelace, sampling doubled until
    // the estimate moves by less than 1e-8
    let mut samples = ((tf * omega / (2.0 * PI)) * 4096.0).ceil() as usize;
    samples = samples.max(4096);
    let mut area = rotating_area(alpha, alpha_dot, omega, z0, tf, samples);
    loop {
        samples *= 2;
        let next = rotating_area(alpha, alpha_dot, omega, z0, tf, samples);
        let done = (next - area).abs() < 1e-8;
        area = next;
        if done || samples > 1 << 22 {
            break;
        }
    }
    let total = -g;
    Ok(PhaseBreakdown {
        total,
        dynamical,
        geometric: total - dynamical,
        area,
        g,
    })
}

fn rotating_area(
    alpha: &dyn Fn(f64) -> f64,
    alpha_dot: &dyn Fn(f64) -> f64,
    omega: f64,
    z0: Complex64,
    tf: f64,
    samples: usize,
) -> f64 {
    let mut area = 0.0;
    let mut prev = rotating_point(alpha, alpha_dot, omega, z0, 0.0);
    for k in 1..=samples {
        let t = tf * k as f64 / samples as f64;
        let cur = rotating_point(alpha, alpha_dot, omega, z0, t);
        // polygon shoelace: dA = (X dP - P dX)/2
        area += 0.5 * (prev.re * cur.im - cur.re * prev.im);
        prev = cur;
    }
    area
}

fn rotating_point(
    alpha: &dyn Fn(f64) -> f64,
    alpha_dot: &dyn Fn(f64) -> f64,
    omega: f64,
    z0: Complex64,
    t: f64,
) -> Complex64 {
    let z = Complex64::new(
        (omega / 2.0).sqrt() * alpha(t),
        alpha_dot(t) / (2.0 * omega).sqrt(),
    ) + (Complex64::new(0.0, -omega * t)).exp() * z0;
    (Complex64::new(0.0, omega * t)).exp() * z
}

/// First-order phase shift from a constant force offset δ_f:
/// Δφ = (δ_f/2ħ)∫α dt.
pub fn offset_sensitivity(
    alpha: &dyn Fn(f64) -> f64,
    delta_f: f64,
    tf: f64,
) -> Result<f64, PhaseError> {
    Ok(0.5 * delta_f * integrate(|t| alpha(t), 0.0, tf, PHASE_TOL, 0.0)?.value)
}

/// Dimensionless quadrature path of one mode, lab and rotating frames.
#[derive(Debug, Clone)]
pub struct QuadraturePath {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    pub x_rot: Vec<f64>,
    pub p_rot: Vec<f64>,
}

pub fn quadrature_path(
    alpha: &dyn Fn(f64) -> f64,
    alpha_dot: &dyn Fn(f64) -> f64,
    omega: f64,
    tf: f64,
    samples: usize,
) -> QuadraturePath {
    let n = samples.max(2);
    let mut path = QuadraturePath {
        t: Vec::with_capacity(n + 1),
        x: Vec::with_capacity(n + 1),
        p: Vec::with_capacity(n + 1),
        x_rot: Vec::with_capacity(n + 1),
        p_rot: Vec::with_capacity(n + 1),
    };
    for k in 0..=n {
        let t = tf * k as f64 / n as f64;
        let x = (omega / 2.0).sqrt() * alpha(t);
        let p = alpha_dot(t) / (2.0 * omega).sqrt();
        let zr = (Complex64::new(0.0, omega * t)).exp() * Complex64::new(x, p);
        path.t.push(t);
        path.x.push(x);
        path.p.push(p);
        path.x_rot.push(zr.re);
        path.p_rot.push(zr.im);
    }
    path
}

impl QuadraturePath {
    pub fn max_radius(&self) -> f64 {
        self.x
            .iter()
            .zip(&self.p)
            .map(|(x, p)| (x * x + p * p).sqrt())
            .fold(0.0, f64::max)
    }

    /// Shoelace area of the rotating-frame path.
    pub fn rotating_area(&self) -> f64 {
        let mut area = 0.0;
        for k in 1..self.t.len() {
            let (x0, p0) = (self.x_rot[k - 1], self.p_rot[k - 1]);
            let (x1, p1) = (self.x_rot[k], self.p_rot[k]);
            area += 0.5 * (x0 * (p1 - p0) - p0 * (x1 - x0));
        }
        area
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::force_design::{design_equal_mass, Mode, SpinConfig};
    use crate::normal_modes::IonPair;

    fn be_design() -> crate::force_design::GateDesign {
        let ions = IonPair::from_amu(9.0, 9.0, 2.0 * PI * 2e6).unwrap();
        design_equal_mass(&ions, 0.5e-6, -PI).unwrap()
    }

    #[test]
    fn free_oscillator_circular_orbit() {
        let z0 = Complex64::new(1.3, -0.4);
        let om = 1.7;
        let traj = solve_forced_oscillator(&|_| 0.0, om, z0, 4.0 * PI, 512).unwrap();
        for (k, &t) in traj.t.iter().enumerate() {
            let z = (Complex64::new(0.0, -om * t)).exp() * z0;
            assert!((traj.y[k] - z.re * (2.0 / om).sqrt()).abs() < 1e-10);
            assert!((traj.ydot[k] - z.im * (2.0 * om).sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn driven_trajectory_matches_design_and_ends_at_rest() {
        let d = be_design();
        let om = d.basis().omega_plus;
        let f = |t: f64| d.mode_force(SpinConfig::UpDown, Mode::Plus, t);
        let traj = solve_forced_oscillator(&f, om, Complex64::new(0.0, 0.0), d.tf(), 256).unwrap();
        let peak = traj.peak();
        assert!(traj.endpoint_residual(om) < 1e-8 * peak);
        for (k, &t) in traj.t.iter().enumerate() {
            let expect = d.alpha_unchecked(SpinConfig::UpDown, Mode::Plus, t);
            assert!((traj.y[k] - expect).abs() < 1e-9 * peak, "t={t}");
        }
        // nonzero z0 adds exactly the free orbit
        let z0 = Complex64::new(0.7, 0.2);
        let traj2 = solve_forced_oscillator(&f, om, z0, d.tf(), 256).unwrap();
        let zf = (Complex64::new(0.0, -om * d.tf())).exp() * z0;
        let n = traj2.y.len() - 1;
        assert!((traj2.y[n] - zf.re * (2.0 / om).sqrt()).abs() < 1e-8 * peak);
    }

    #[test]
    fn lr_phase_structure() {
        // undriven: θ_n = −(n+½)Ωt_f; spacing −Ωt_f independent of drive
        let om = 3f64.sqrt();
        let tf = 7.0;
        assert_eq!(lewis_riesenfeld_phase(0, om, tf, 0.0), -0.5 * om * tf);
        let g = 0.873;
        let d10 = lewis_riesenfeld_phase(1, om, tf, g) - lewis_riesenfeld_phase(0, om, tf, g);
        assert!((d10 + om * tf).abs() < 1e-14);
    }

    #[test]
    fn minus_g_equals_half_f_alpha_integral() {
        let d = be_design();
        let om = d.basis().omega_plus;
        let cfg = SpinConfig::UpDown;
        let al = |t: f64| d.alpha_unchecked(cfg, Mode::Plus, t);
        let ald = |t: f64| d.alpha_dot_unchecked(cfg, Mode::Plus, t);
        let f = |t: f64| d.mode_force(cfg, Mode::Plus, t);
        let g = g_integral(&al, &ald, om, d.tf()).unwrap();
        let half_int = 0.5 * integrate(|t| f(t) * al(t), 0.0, d.tf(), 1e-13, 0.0).unwrap().value;
        assert!((-g - half_int).abs() < 1e-9, "{} vs {}", -g, half_int);
    }

    #[test]
    fn single_integral_reproduces_design_phases() {
        let d = be_design();
        let (op, om) = (d.basis().omega_plus, d.basis().omega_minus);
        for cfg in SpinConfig::ALL {
            let phi = gate_phase_single_integral(
                &|t| d.mode_force(cfg, Mode::Plus, t),
                &|t| d.alpha_unchecked(cfg, Mode::Plus, t),
                &|t| d.alpha_dot_unchecked(cfg, Mode::Plus, t),
                &|t| d.mode_force(cfg, Mode::Minus, t),
                &|t| d.alpha_unchecked(cfg, Mode::Minus, t),
                &|t| d.alpha_dot_unchecked(cfg, Mode::Minus, t),
                (op, om),
                d.tf(),
            )
            .unwrap();
            assert!((phi - d.phase(cfg)).abs() < 1e-9);
        }
        // zero drive, zero phase
        let z = gate_phase_single_integral(
            &|_| 0.0, &|_| 0.0, &|_| 0.0, &|_| 0.0, &|_| 0.0, &|_| 0.0, (op, om), d.tf(),
        )
        .unwrap();
        assert_eq!(z, 0.0);
    }

    #[test]
    fn boundary_violation_detected() {
        let d = be_design();
        let (op, om) = (d.basis().omega_plus, d.basis().omega_minus);
        // a trajectory that does not end at rest
        let bad = |t: f64| (1.1 * t).sin();
        let bad_dot = |t: f64| 1.1 * (1.1 * t).cos();
        let r = gate_phase_single_integral(
            &|t| d.mode_force(SpinConfig::UpDown, Mode::Plus, t),
            &bad,
            &bad_dot,
            &|_| 0.0,
            &|_| 0.0,
            &|_| 0.0,
            (op, om),
            d.tf(),
        );
        assert!(matches!(r, Err(PhaseError::BoundaryViolation { .. })));
    }

    #[test]
    fn double_integral_routes_agree() {
        let d = be_design();
        let (op, om) = (d.basis().omega_plus, d.basis().omega_minus);
        let cfg = SpinConfig::UpDown;
        let fp = |t: f64| d.mode_force(cfg, Mode::Plus, t);
        let fm = |t: f64| d.mode_force(cfg, Mode::Minus, t);
        let tri = gate_phase_double_integral(&fp, &fm, (op, om), d.tf()).unwrap();
        let sq = gate_phase_double_integral_square(&fp, &fm, (op, om), d.tf()).unwrap();
        assert!((tri - sq).abs() < 1e-10, "{tri} vs {sq}");
        assert!((tri - d.phase(cfg)).abs() < 1e-8);
        let zero = gate_phase_double_integral(&|_| 0.0, &|_| 0.0, (op, om), d.tf()).unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn decomposition_identities_and_z0_independence() {
        let d = be_design();
        let om = d.basis().omega_plus;
        let cfg = SpinConfig::UpDown;
        let al = |t: f64| d.alpha_unchecked(cfg, Mode::Plus, t);
        let ald = |t: f64| d.alpha_dot_unchecked(cfg, Mode::Plus, t);
        let f = |t: f64| d.mode_force(cfg, Mode::Plus, t);
        let pb0 = phase_decomposition(&f, &al, &ald, om, Complex64::new(0.0, 0.0), d.tf()).unwrap();
        // φ = −G, φ_d = 4A, φ_g = −2A, φ = 2A, φ = φ_d + φ_g
        assert!((pb0.total + pb0.g).abs() < 1e-12);
        assert!((pb0.dynamical - 4.0 * pb0.area).abs() < 1e-6);
        assert!((pb0.geometric + 2.0 * pb0.area).abs() < 1e-6);
        assert!((pb0.total - 2.0 * pb0.area).abs() < 1e-6);
        assert!((pb0.total - (pb0.dynamical + pb0.geometric)).abs() < 1e-12);
        // z0-independence of φ_d
        let pb1 = phase_decomposition(&f, &al, &ald, om, Complex64::new(0.9, -1.4), d.tf()).unwrap();
        assert!((pb0.dynamical - pb1.dynamical).abs() < 1e-6);
        assert!((pb0.area - pb1.area).abs() < 1e-6);
        // no drive, no phases
        let pbz = phase_decomposition(&|_| 0.0, &|_| 0.0, &|_| 0.0, om, Complex64::new(0.4, 0.1), d.tf()).unwrap();
        assert!(pbz.total.abs() < 1e-12 && pbz.dynamical.abs() < 1e-9 && pbz.area.abs() < 1e-8);
    }

    #[test]
    fn offset_sensitivity_vanishes_for_odd_designs() {
        let d = be_design();
        let al = |t: f64| d.alpha_unchecked(SpinConfig::UpDown, Mode::Plus, t);
        let s = offset_sensitivity(&al, 0.37, d.tf()).unwrap();
        assert!(s.abs() < 1e-10);
        assert_eq!(offset_sensitivity(&al, 0.0, d.tf()).unwrap(), 0.0);
        // deliberately asymmetric trajectory: sin²(πt/t_f)·t against direct quadrature
        let tf = d.tf();
        let asym = move |t: f64| (PI * t / tf).sin().powi(2) * t;
        let s = offset_sensitivity(&asym, 2.0, tf).unwrap();
        let direct = integrate(|t| asym(t), 0.0, tf, 1e-13, 0.0).unwrap().value;
        assert!((s - direct).abs() < 1e-10);
        assert!(s.abs() > 1e-3);
    }

    #[test]
    fn quadrature_path_properties() {
        let d = be_design();
        let om = d.basis().omega_plus;
        let cfg = SpinConfig::UpDown;
        let al = |t: f64| d.alpha_unchecked(cfg, Mode::Plus, t);
        let ald = |t: f64| d.alpha_dot_unchecked(cfg, Mode::Plus, t);
        let path = quadrature_path(&al, &ald, om, d.tf(), 4096);
        let n = path.t.len() - 1;
        // closed curve through the origin in both frames
        for (x, p) in [(path.x[0], path.p[0]), (path.x[n], path.p[n]),
                       (path.x_rot[0], path.p_rot[0]), (path.x_rot[n], path.p_rot[n])] {
            assert!(x.abs() < 1e-8 && p.abs() < 1e-8);
        }
        // enclosed rotating-frame area × 2 = configuration phase
        let ions = IonPair::from_amu(9.0, 9.0, 2.0 * PI * 2e6).unwrap();
        let d08 = design_equal_mass(&ions, 0.8e-6, -PI).unwrap();
        let d10 = design_equal_mass(&ions, 1.0e-6, -PI).unwrap();
        let path08 = quadrature_path(
            &|t| d08.alpha_unchecked(cfg, Mode::Plus, t),
            &|t| d08.alpha_dot_unchecked(cfg, Mode::Plus, t),
            om,
            d08.tf(),
            1 << 14,
        );
        let path10 = quadrature_path(
            &|t| d10.alpha_unchecked(cfg, Mode::Plus, t),
            &|t| d10.alpha_dot_unchecked(cfg, Mode::Plus, t),
            om,
            d10.tf(),
            1 << 14,
        );
        // shorter gates sweep larger amplitudes
        assert!(path08.max_radius() > path10.max_radius());
        assert!((2.0 * path08.rotating_area() - d08.phase(cfg)).abs() < 1e-5);
    }
}
