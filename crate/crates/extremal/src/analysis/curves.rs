//! Conjectured growth curves and the moment conjecture, all in terms of log T.

use std::f64::consts::{PI, SQRT_2};

use crate::ensembles::cue_log_moment;
use crate::error::{domain, Result};
use crate::mathfn::{arithmetic_factor_a, log_barnes_ratio};

/// Relative tolerance used for log a(k) inside the bound pipelines.
pub const ARITH_TOL: f64 = 1e-10;

fn log_log(log_t: f64) -> Result<f64> {
    if !(log_t.is_finite() && log_t > 1.0) {
        return domain(format!("need log T > 1 so that log log T > 0, got {log_t}"));
    }
    Ok(log_t.ln())
}

/// √(B · log T · log log T), the log of the conjectured maximum.
pub fn conjecture_curve(log_t: f64, b: f64) -> Result<f64> {
    let ll = log_log(log_t)?;
    Ok((b * log_t * ll).sqrt())
}

/// √(log T · log log T)/(π√2), the conjectured limsup scale of S(t).
pub fn s_conjecture_curve(log_t: f64) -> Result<f64> {
    let ll = log_log(log_t)?;
    Ok((log_t * ll).sqrt() / (PI * SQRT_2))
}

/// Which factors of the moment conjecture enter a pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum MomentModel {
    /// Barnes factor, arithmetic factor a(k) and (log T)^{k²}.
    Full,
    /// Barnes factor and (log T)^{k²} only.
    RandomMatrixOnly,
}

/// log of G²(k+1)/G(2k+1) · a(k) · (log T)^{k²}.
pub fn ks_log_moment(log_t: f64, k: f64) -> Result<f64> {
    ks_log_moment_with(log_t, k, MomentModel::Full)
}

pub fn ks_log_moment_with(log_t: f64, k: f64, model: MomentModel) -> Result<f64> {
    if !(k >= 0.0 && k.is_finite()) {
        return domain(format!("moment order must be finite and nonnegative, got {k}"));
    }
    if k == 0.0 {
        return Ok(0.0);
    }
    let ll = log_log(log_t)?;
    let arith = match model {
        MomentModel::Full => arithmetic_factor_a(k, ARITH_TOL)?,
        MomentModel::RandomMatrixOnly => 0.0,
    };
    Ok(log_barnes_ratio(k)? + arith + k * k * ll)
}

/// log[G(N+1)G(N+2k+1)/G(N+k+1)²] divided by its first term k² log N.
/// The remainder k³/N − 7k⁴/(12N²) + … stays small against k² log N for k = N^δ, δ < 1.
pub fn rmt_leading_share(n: usize, k: f64) -> Result<f64> {
    if n < 2 {
        return domain(format!("need N >= 2 so that log N > 0, got {n}"));
    }
    if !(k > 0.0 && k.is_finite()) {
        return domain(format!("moment order must be positive, got {k}"));
    }
    let finite_n = cue_log_moment(n, k)? - log_barnes_ratio(k)?;
    Ok(finite_n / (k * k * (n as f64).ln()))
}

/// log of the conjectured fraction of [0, T] where |ζ| > exp(d√(log T log log T)).
pub fn density_large_values(log_t: f64, d: f64) -> f64 {
    -2.0 * d * d * log_t
}

/// d at which T·log T times the conjectured fraction is of order one.
pub fn critical_density_exponent(log_t: f64) -> Result<f64> {
    let ll = log_log(log_t)?;
    Ok(((log_t + ll) / (2.0 * log_t)).sqrt())
}
