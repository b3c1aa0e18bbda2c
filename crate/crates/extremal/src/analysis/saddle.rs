//! Saddle point of the convolved tail of log|P_X| + log|Z_X|.

use serde::Serialize;
use std::f64::consts::E;

use crate::error::{domain, Error, Result};

const MAX_NEWTON: usize = 100;

/// The exponent f_K(x) = (log K − x)²/(α log log T) + x²/((1−α) log log T − log x)
/// with log K = d√(log T log log T). For x ≤ e the log x in the denominator is
/// replaced by 1, its value at x = e.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvolutionExponent {
    pub log_t: f64,
    pub alpha: f64,
    pub d: f64,
    log_k: f64,
    ll: f64,
}

impl ConvolutionExponent {
    pub fn new(log_t: f64, alpha: f64, d: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return domain(format!("α must lie in (0, 1/2), got {alpha}"));
        }
        if !(d > 0.0) {
            return domain(format!("d must be positive, got {d}"));
        }
        if !(log_t.is_finite() && log_t > E) {
            return domain(format!("need log T > e, got {log_t}"));
        }
        let ll = log_t.ln();
        Ok(Self { log_t, alpha, d, log_k: d * (log_t * ll).sqrt(), ll })
    }

    pub fn log_k(&self) -> f64 {
        self.log_k
    }

    fn denom(&self, x: f64) -> (f64, bool) {
        if x <= E {
            ((1.0 - self.alpha) * self.ll - 1.0, true)
        } else {
            ((1.0 - self.alpha) * self.ll - x.ln(), false)
        }
    }

    /// Largest x where the denominator stays positive.
    pub fn singular_point(&self) -> f64 {
        ((1.0 - self.alpha) * self.ll).exp()
    }

    pub fn value(&self, x: f64) -> f64 {
        let (den, _) = self.denom(x);
        (self.log_k - x).powi(2) / (self.alpha * self.ll) + x * x / den
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (den, clamped) = self.denom(x);
        let prime = 2.0 * (x - self.log_k) / (self.alpha * self.ll) + 2.0 * x / den;
        if clamped {
            prime
        } else {
            prime + x / (den * den)
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let (den, clamped) = self.denom(x);
        let base = 2.0 / (self.alpha * self.ll) + 2.0 / den;
        if clamped {
            base
        } else {
            base + 3.0 / (den * den) + 2.0 / (den * den * den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaddlePoint {
    pub x0: f64,
    pub f_value: f64,
    pub iterations: usize,
    /// d(1−2α)√(log T log log T)
    pub leading_x0: f64,
}

/// Solves f_K′(x0) = 0 by Newton's method safeguarded with a bisection bracket,
/// starting from d(1−2α)√(log T log log T).
pub fn saddle_point_x0(log_t: f64, alpha: f64, d: f64) -> Result<SaddlePoint> {
    let f = ConvolutionExponent::new(log_t, alpha, d)?;
    let leading_x0 = d * (1.0 - 2.0 * alpha) * (log_t * f.ll).sqrt();
    let mut lo = 0.0;
    let mut hi = f.log_k.min(f.singular_point() * (1.0 - 1e-9));
    if f.derivative(hi) <= 0.0 {
        return Err(Error::Numerical { iterations: 0, residual: f.derivative(hi) });
    }
    let mut x = leading_x0.clamp(lo, hi);
    for it in 1..=MAX_NEWTON {
        let g = f.derivative(x);
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - g / f.second_derivative(x);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-13 * x.abs().max(1.0) {
            return Ok(SaddlePoint { x0: next, f_value: f.value(next), iterations: it, leading_x0 });
        }
        x = next;
    }
    Err(Error::Numerical { iterations: MAX_NEWTON, residual: f.derivative(x).abs() })
}
