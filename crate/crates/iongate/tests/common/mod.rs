//! Shared oracles for the integration suites: a fixed-step RK4 integrator
//! for the driven-oscillator Newton equation, independent of the closed
//! forms it checks, plus small fitting helpers.

/// Integrate ÿ + Ω²y = f(t) from rest over [0, t_f] with `steps` RK4 steps.
/// Returns (y(t_f), ẏ(t_f), max |y|).
pub fn rk4_driven_oscillator<F: Fn(f64) -> f64>(
    f: &F,
    omega: f64,
    tf: f64,
    steps: usize,
) -> (f64, f64, f64) {
    let h = tf / steps as f64;
    let om2 = omega * omega;
    let mut y = 0.0f64;
    let mut v = 0.0f64;
    let mut peak = 0.0f64;
    for k in 0..steps {
        let t = k as f64 * h;
        let acc = |tt: f64, yy: f64| f(tt) - om2 * yy;
        let (k1y, k1v) = (v, acc(t, y));
        let (k2y, k2v) = (v + 0.5 * h * k1v, acc(t + 0.5 * h, y + 0.5 * h * k1y));
        let (k3y, k3v) = (v + 0.5 * h * k2v, acc(t + 0.5 * h, y + 0.5 * h * k2y));
        let (k4y, k4v) = (v + h * k3v, acc(t + h, y + h * k3y));
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        peak = peak.max(y.abs());
    }
    (y, v, peak)
}

/// Unweighted least-squares slope of y against x.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Print the acceptance line for one criterion and return the flag.
pub fn criterion(name: &str, ok: bool, detail: &str) -> bool {
    println!("{}: {name} — {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}
