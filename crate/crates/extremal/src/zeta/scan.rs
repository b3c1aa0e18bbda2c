//! Running maximum of |ζ(1/2+it)| over a range of heights.

use rayon::prelude::*;
use serde::Serialize;

use super::critical::hardy_z;
use super::zeros::ZeroTable;
use crate::error::{domain, Result};

/// Default A in the sampling step A/log t1.
pub const DEFAULT_STEP_CONSTANT: f64 = 0.5;
pub const SCAN_MAX_HEIGHT: f64 = 1e7;
const REFINE_TOL: f64 = 1e-6;
/// Grid champions within this much (in log) of the best refined value are refined too.
const REFINE_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRecord {
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    pub step_constant: f64,
    pub argmax_t: f64,
    pub max_log_abs_zeta: f64,
    pub conjecture_log: f64,
    pub ratio: f64,
}

/// √(½ log T · log log T); NaN when log log T ≤ 0.
pub fn conjecture_log(t: f64) -> f64 {
    let l = t.ln();
    if l <= 1.0 {
        return f64::NAN;
    }
    (0.5 * l * l.ln()).sqrt()
}

fn log_abs_zeta(t: f64) -> f64 {
    hardy_z(t).abs().ln()
}

/// Samples log|ζ(1/2+it)| on [t0, t1] at spacing A/log t1, then refines every
/// competitive local maximum by golden section. Midpoints between consecutive
/// zeros of the table, when given, are added to the grid.
pub fn scan_max(t0: f64, t1: f64, step_constant: f64, zeros: Option<&ZeroTable>) -> Result<ScanRecord> {
    if !(t0 >= 0.0 && t0 < t1 && t1 <= SCAN_MAX_HEIGHT) {
        return domain(format!("scan needs 0 <= t0 < t1 <= {SCAN_MAX_HEIGHT}, got [{t0}, {t1}]"));
    }
    if !(step_constant > 0.0 && step_constant.is_finite()) {
        return domain(format!("step constant must be positive, got {step_constant}"));
    }
    let step = step_constant / t1.ln().max(1.0);
    let count = ((t1 - t0) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|i| (t0 + i as f64 * step).min(t1)).collect();
    if let Some(z) = zeros {
        let inside = z.window(t0, t1);
        grid.extend(inside.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        grid.sort_by(f64::total_cmp);
        grid.dedup();
    }
    let values: Vec<f64> = grid.par_iter().map(|&t| log_abs_zeta(t)).collect();

    let last = grid.len() - 1;
    let mut champions: Vec<usize> = (0..=last)
        .filter(|&i| (i == 0 || values[i] >= values[i - 1]) && (i == last || values[i] >= values[i + 1]))
        .collect();
    champions.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let best_grid = values[champions[0]];
    champions.retain(|&i| values[i] >= best_grid - REFINE_MARGIN);

    let refined: Vec<(f64, f64)> = champions
        .par_iter()
        .map(|&i| {
            let lo = grid[i.saturating_sub(1)];
            let hi = grid[(i + 1).min(last)];
            let (t, v) = golden_max(lo, hi);
            if v >= values[i] {
                (t, v)
            } else {
                (grid[i], values[i])
            }
        })
        .collect();
    let (argmax_t, max_log) = refined
        .into_iter()
        .fold((f64::NAN, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 || (cand.1 == best.1 && cand.0 < best.0) {
                cand
            } else {
                best
            }
        });
    let conj = conjecture_log(t1);
    Ok(ScanRecord {
        t0,
        t1,
        step,
        step_constant,
        argmax_t,
        max_log_abs_zeta: max_log,
        conjecture_log: conj,
        ratio: max_log / conj,
    })
}

fn golden_max(mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = log_abs_zeta(c);
    let mut fd = log_abs_zeta(d);
    while b - a > REFINE_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = log_abs_zeta(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = log_abs_zeta(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, log_abs_zeta(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_dense_grid() {
        let rec = scan_max(0.0, 50.0, DEFAULT_STEP_CONSTANT, None).unwrap();
        let h = rec.step / 10.0;
        let n = (50.0 / h) as usize;
        let dense = (0..=n).map(|i| log_abs_zeta(i as f64 * h)).fold(f64::NEG_INFINITY, f64::max);
        assert!(rec.max_log_abs_zeta >= dense - 1e-4, "{} vs {dense}", rec.max_log_abs_zeta);
        assert!(rec.max_log_abs_zeta <= dense + 1e-4);
        assert!((0.0..=50.0).contains(&rec.argmax_t));
    }

    #[test]
    fn nested_ranges_nondecreasing() {
        let a = scan_max(0.0, 30.0, 0.5, None).unwrap();
        let b = scan_max(0.0, 60.0, 0.5, None).unwrap();
        assert!(b.max_log_abs_zeta >= a.max_log_abs_zeta - 1e-9);
    }

    #[test]
    fn conjecture_formula() {
        let t: f64 = 1e6;
        let l = t.ln();
        assert!((conjecture_log(t) - (0.5 * l * l.ln()).sqrt()).abs() < 1e-15);
        assert!(conjecture_log(2.0).is_nan());
    }

    #[test]
    fn rejects_bad_range() {
        assert!(scan_max(10.0, 5.0, 0.5, None).is_err());
        assert!(scan_max(0.0, 2e7, 0.5, None).is_err());
    }
}
