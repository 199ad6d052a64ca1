//! Error types for the design, phase and simulation layers.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DesignError {
    #[error("gate duration must be positive, got {0} s")]
    InvalidDuration(f64),
    #[error(
        "target phase {gamma} has the wrong sign for this duration (required sign {required:+}); \
         a real ansatz coefficient needs sign-matched phase and denominator"
    )]
    NonRealCoefficient { gamma: f64, required: f64 },
    #[error(
        "t_f = {requested_us:.6} us lies within the {guard_percent}% guard band of a critical \
         time (t1 = {t1_us:.6} us, t2 = {t2_us:.6} us); forces diverge there"
    )]
    CriticalTimeProximity {
        requested_us: f64,
        t1_us: f64,
        t2_us: f64,
        guard_percent: f64,
    },
    #[error("normal modes are degenerate (Omega+ = Omega-)")]
    DegenerateModes,
    #[error("degenerate force ratio: {0}")]
    DegenerateRatio(String),
    #[error("force-ratio scaling C^2 = {0} is negative; no real rescaled design exists")]
    NonRealScaling(f64),
    #[error("time {t} outside design interval [0, {tf}]")]
    OutOfRange { t: f64, tf: f64 },
    #[error("mass ratio must satisfy mu >= 1, got {0}")]
    InvalidMassRatio(f64),
    #[error("equal-mass designer requires mu = 1, got mu = {0}")]
    NotEqualMass(f64),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PhaseError {
    #[error("adaptive quadrature failed to reach tolerance (best error {best_error:.3e})")]
    QuadratureFailure { best_error: f64 },
    #[error(
        "trajectory violates boundary conditions (endpoint residual {residual:.3e} of peak \
         {peak:.3e}); phase formula is invalid"
    )]
    BoundaryViolation { residual: f64, peak: f64 },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SimError {
    #[error("grid too narrow: {0}")]
    GridTooNarrow(String),
    #[error("grid dimensions must be powers of two, got {n1} x {n2}")]
    BadGridSize { n1: usize, n2: usize },
    #[error("imaginary-time relaxation did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("norm drifted by {0:.3e} during propagation (limit 1e-8)")]
    NormDrift(f64),
    #[error("boundary amplitude reached {0:.3e} during propagation (limit 1e-6)")]
    BoundaryLeak(f64),
    #[error("wavefunctions live on different grids")]
    GridMismatch,
    #[error("design error: {0}")]
    Design(#[from] DesignError),
}
