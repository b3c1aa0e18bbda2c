//! Upper and lower bounds for log max|ζ| from the moment conjecture, the
//! resulting validity limit of the conjecture, and the τ-threshold variant.

use serde::Serialize;
use std::f64::consts::{LN_2, SQRT_2};

use super::curves::{conjecture_curve, ks_log_moment_with, MomentModel};
use super::optimize::{bisect_increasing, minimize_unimodal};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub log_t: f64,
    /// ℓ for upper bounds, k for lower bounds.
    pub order: f64,
    /// order / √(log T / log log T)
    pub c: f64,
    /// Bound on log m_T.
    pub log_bound: f64,
    pub direction: Direction,
    /// Constant in the short-interval lemma (1 unless set).
    pub constant: f64,
}

/// √(log T / log log T), the natural scale of the moment order.
pub fn order_scale(log_t: f64) -> Result<f64> {
    if !(log_t.is_finite() && log_t > 1.0) {
        return domain(format!("need log T > 1, got {log_t}"));
    }
    Ok((log_t / log_t.ln()).sqrt())
}

/// log m_T ≤ log 2 + (log C + log T + log log T)/(2ℓ) + log M_ℓ/(2ℓ).
pub fn moment_upper_bound(log_t: f64, ell: f64, constant: f64) -> Result<BoundReport> {
    moment_upper_bound_with(log_t, ell, constant, MomentModel::Full)
}

pub fn moment_upper_bound_with(log_t: f64, ell: f64, constant: f64, model: MomentModel) -> Result<BoundReport> {
    if !(ell > 0.0) {
        return domain(format!("ℓ must be positive, got {ell}"));
    }
    if !(constant > 0.0) {
        return domain(format!("constant must be positive, got {constant}"));
    }
    let scale = order_scale(log_t)?;
    let moment = ks_log_moment_with(log_t, ell, model)?;
    let log_bound = LN_2 + (constant.ln() + log_t + log_t.ln()) / (2.0 * ell) + moment / (2.0 * ell);
    Ok(BoundReport { log_t, order: ell, c: ell / scale, log_bound, direction: Direction::Upper, constant })
}

/// log m_T ≥ log M_k/(2k).
pub fn moment_lower_bound(log_t: f64, k: f64) -> Result<BoundReport> {
    moment_lower_bound_with(log_t, k, MomentModel::Full)
}

pub fn moment_lower_bound_with(log_t: f64, k: f64, model: MomentModel) -> Result<BoundReport> {
    if !(k > 0.0) {
        return domain(format!("k must be positive, got {k}"));
    }
    let scale = order_scale(log_t)?;
    let log_bound = ks_log_moment_with(log_t, k, model)? / (2.0 * k);
    Ok(BoundReport { log_t, order: k, c: k / scale, log_bound, direction: Direction::Lower, constant: 1.0 })
}

/// Leading coefficient 1/(2c) + c/4 of the upper bound in units of √(log T log log T).
pub fn leading_upper_coefficient(c: f64) -> f64 {
    1.0 / (2.0 * c) + c / 4.0
}

/// Minimizer of [`leading_upper_coefficient`].
pub fn leading_optimal_c() -> Result<f64> {
    minimize_unimodal(|c| Ok(leading_upper_coefficient(c)), 0.1, 10.0, 1e-13)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizedBound {
    pub c_star: f64,
    pub report: BoundReport,
    /// log_bound / √(½ log T log log T)
    pub normalized: f64,
}

/// Minimizes the upper bound over ℓ = c·√(log T/log log T).
pub fn optimize_upper_bound(log_t: f64) -> Result<OptimizedBound> {
    optimize_upper_bound_with(log_t, 1.0, MomentModel::Full)
}

pub fn optimize_upper_bound_with(log_t: f64, constant: f64, model: MomentModel) -> Result<OptimizedBound> {
    let scale = order_scale(log_t)?;
    if log_t.ln() <= 1.0 {
        return domain(format!("need log log T > 1, got log T = {log_t}"));
    }
    let bound = |c: f64| -> Result<f64> { Ok(moment_upper_bound_with(log_t, c * scale, constant, model)?.log_bound) };
    let c_star = minimize_unimodal(bound, 0.2, 6.0, 1e-5)?;
    let report = moment_upper_bound_with(log_t, c_star * scale, constant, model)?;
    let normalized = report.log_bound / conjecture_curve(log_t, 0.5)?;
    Ok(OptimizedBound { c_star, report, normalized })
}

/// 2√2·√(log T/log log T): orders beyond this contradict the upper bound.
pub fn ks_validity_limit(log_t: f64) -> Result<f64> {
    Ok(2.0 * SQRT_2 * order_scale(log_t)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContradictionCheck {
    pub c_lower: f64,
    pub lower: BoundReport,
    pub upper: BoundReport,
    /// The lower bound at k = c_lower·scale exceeds the upper bound at ℓ = √2·scale.
    pub contradicts: bool,
}

pub fn contradiction_check(log_t: f64, c_lower: f64, constant: f64, model: MomentModel) -> Result<ContradictionCheck> {
    let scale = order_scale(log_t)?;
    let lower = moment_lower_bound_with(log_t, c_lower * scale, model)?;
    let upper = moment_upper_bound_with(log_t, SQRT_2 * scale, constant, model)?;
    Ok(ContradictionCheck { c_lower, lower, upper, contradicts: lower.log_bound > upper.log_bound })
}

/// log τ with log T/(2k) + (k/2) log log T − (k/2) log k.
pub fn tau_threshold(log_t: f64, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return domain(format!("k must be positive, got {k}"));
    }
    order_scale(log_t)?;
    Ok(log_t / (2.0 * k) + 0.5 * k * log_t.ln() - 0.5 * k * k.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauOptimum {
    pub k_star: f64,
    pub tau_log: f64,
}

/// Minimizes [`tau_threshold`] over k from the sign change of its derivative.
pub fn tau_optimal(log_t: f64) -> Result<TauOptimum> {
    let scale = order_scale(log_t)?;
    let ll = log_t.ln();
    let slope = |k: f64| -log_t / (2.0 * k * k) + 0.5 * ll - 0.5 * k.ln() - 0.5;
    // the slope increases while k² < 2 log T
    let hi = (10.0 * scale).min((2.0 * log_t).sqrt());
    let k_star = bisect_increasing(slope, 1e-3 * scale, hi, 1e-14)?;
    Ok(TauOptimum { k_star, tau_log: tau_threshold(log_t, k_star)? })
}
