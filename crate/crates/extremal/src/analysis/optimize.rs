//! One-dimensional minimization and root finding.

use crate::error::{Error, Result};

/// Minimizes a unimodal `f` on [a, b]: golden section to a coarse bracket, then
/// bisection on the centered-difference slope, which resolves the minimizer far
/// below the √ε limit of comparing function values.
pub fn minimize_unimodal<F: FnMut(f64) -> Result<f64>>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let coarse = (1e-4 * (b - a)).max(tol);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > coarse {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let h = 1e-6 * (a.abs() + b.abs()).max(1e-3);
    let mut slope = |x: f64| -> Result<f64> { Ok(f(x + h)? - f(x - h)?) };
    let (mut lo, mut hi) = (a, b);
    let (s_lo, s_hi) = (slope(lo)?, slope(hi)?);
    if s_lo >= 0.0 || s_hi <= 0.0 {
        return Ok(0.5 * (a + b));
    }
    while hi - lo > tol {
        let m = 0.5 * (lo + hi);
        if slope(m)? < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of an increasing `g` on [a, b] by bisection.
pub fn bisect_increasing<G: FnMut(f64) -> f64>(mut g: G, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let (ga, gb) = (g(a), g(b));
    if !(ga <= 0.0 && gb >= 0.0) {
        return Err(Error::Numerical { iterations: 0, residual: ga.abs().min(gb.abs()) });
    }
    while b - a > tol * (1.0 + a.abs()) {
        let m = 0.5 * (a + b);
        if g(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
