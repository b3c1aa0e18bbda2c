//! L(1/2, χ_d) for fundamental discriminants d.

use statrs::function::gamma::gamma_ur;
use std::f64::consts::PI;

use super::character::{character_table, is_fundamental_discriminant, kronecker_symbol};
use crate::error::{domain, Result};
use crate::mathfn::{smallest_prime_factors, BERNOULLI_EVEN};

pub const MAX_CONDUCTOR: u64 = 100_000_000;
pub const MIN_TOL: f64 = 1e-8;

/// Number of terms the approximate functional equation needs for |d| at `tol`.
pub fn afe_length(conductor: u64, tol: f64) -> usize {
    let x_max = -tol.ln() + 5.0;
    ((conductor as f64 * x_max / PI).sqrt().ceil() as usize).max(2)
}

fn check(d: i64, tol: f64) -> Result<()> {
    if d == 1 || !is_fundamental_discriminant(d) {
        return domain(format!("{d} is not a fundamental discriminant of a quadratic character"));
    }
    if d.unsigned_abs() > MAX_CONDUCTOR {
        return domain(format!("|d| = {} exceeds {MAX_CONDUCTOR}", d.unsigned_abs()));
    }
    if !(tol >= MIN_TOL) {
        return domain(format!("tol must be at least {MIN_TOL}, got {tol}"));
    }
    Ok(())
}

/// L(1/2, χ_d) by the smoothed approximate functional equation
/// 2 Σ χ_d(n) n^{−1/2} Q(w, πn²/|d|), w = 1/4 for d > 0 and 3/4 for d < 0,
/// with Q the regularized upper incomplete gamma function.
pub fn l_central_quadratic(d: i64, tol: f64) -> Result<f64> {
    check(d, tol)?;
    let len = afe_length(d.unsigned_abs(), tol) + 1;
    let spf = smallest_prime_factors(len);
    Ok(afe_sum(d, &character_table(d, &spf, len)))
}

/// Same as [`l_central_quadratic`] with a caller-supplied smallest-prime-factor table
/// covering the needed length.
pub(crate) fn l_central_with_spf(d: i64, tol: f64, spf: &[u32]) -> f64 {
    let len = afe_length(d.unsigned_abs(), tol) + 1;
    afe_sum(d, &character_table(d, spf, len))
}

fn afe_sum(d: i64, chi: &[i8]) -> f64 {
    let q = d.unsigned_abs() as f64;
    let w = if d > 0 { 0.25 } else { 0.75 };
    let mut sum = 0.0;
    for (n, &c) in chi.iter().enumerate().skip(1) {
        if c == 0 {
            continue;
        }
        let nf = n as f64;
        sum += c as f64 * gamma_ur(w, PI * nf * nf / q) / nf.sqrt();
    }
    2.0 * sum
}

/// Hurwitz ζ(1/2, x) for x ∈ (0, 1] by Euler–Maclaurin.
fn hurwitz_half(x: f64) -> f64 {
    let s = 0.5;
    let m = 20usize;
    let mut sum: f64 = (0..m).map(|k| (k as f64 + x).powf(-s)).sum();
    let y = m as f64 + x;
    sum += y.powf(1.0 - s) / (s - 1.0) + 0.5 * y.powf(-s);
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = y.powf(-s - 1.0);
    for (i, b) in BERNOULLI_EVEN.iter().enumerate() {
        sum += b / fact * rising * pow;
        let j = 2.0 * (i + 1) as f64;
        rising *= (s + j - 1.0) * (s + j);
        fact *= (j + 1.0) * (j + 2.0);
        pow /= y * y;
    }
    sum
}

/// L(1/2, χ_d) = |d|^{−1/2} Σ_{a ≤ |d|} χ_d(a) ζ(1/2, a/|d|): the Dirichlet series
/// summed by residue class, each class accelerated by Euler–Maclaurin.
/// Costs O(|d|); used as a reference for the fast evaluation.
pub fn l_central_by_residue_classes(d: i64) -> Result<f64> {
    check(d, MIN_TOL)?;
    let q = d.unsigned_abs();
    let mut sum = 0.0;
    for a in 1..=q {
        let c = kronecker_symbol(d, a);
        if c != 0 {
            sum += c as f64 * hurwitz_half(a as f64 / q as f64);
        }
    }
    Ok(sum / (q as f64).sqrt())
}
