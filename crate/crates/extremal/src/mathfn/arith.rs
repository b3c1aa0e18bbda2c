//! The arithmetic factor a(k) = ∏_p (1 − 1/p)^{k²} Σ_m (Γ(m+k)/(m! Γ(k)))² p^{−m},
//! always handled through its logarithm.

use std::sync::OnceLock;

use super::expint::exp_integral_e1;
use super::sieve::primes_up_to;
use crate::error::{domain, Result};
use num_complex::Complex64;

/// Σ_p p^{−2} and Σ_p p^{−3}.
const PRIME_ZETA_2: f64 = 0.452_247_420_041_065_5;
const PRIME_ZETA_3: f64 = 0.174_762_639_299_443_54;

/// Largest prime cutoff summed explicitly; beyond it the tail is an integral
/// against the prime-number-theorem density 1/log x.
pub const PRIME_CUTOFF_CAP: u64 = 20_000_000;
const PRIME_CUTOFF_MIN: u64 = 100_000;

// Per-prime factors switch to the power series in 1/p once k²/p drops below this.
const SERIES_SWITCH: f64 = 0.05;
const SERIES_TERMS: usize = 40;

fn cached_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(PRIME_CUTOFF_CAP))
}

/// log a(k), with the prime cutoff max(1e5, 100k²) capped at [`PRIME_CUTOFF_CAP`].
pub fn arithmetic_factor_a(k: f64, rel_tol: f64) -> Result<f64> {
    check(k, rel_tol)?;
    let cutoff = ((100.0 * k * k).ceil() as u64).clamp(PRIME_CUTOFF_MIN, PRIME_CUTOFF_CAP);
    log_arith_factor_with_cutoff(k, cutoff, rel_tol)
}

/// log a(k) with an explicit prime cutoff; primes above it are handled analytically.
pub fn log_arith_factor_with_cutoff(k: f64, cutoff: u64, rel_tol: f64) -> Result<f64> {
    check(k, rel_tol)?;
    if k == 0.0 || k == 1.0 {
        return Ok(0.0);
    }
    let local = LocalFactor::new(k, rel_tol);
    let owned;
    let primes: &[u64] = if cutoff <= PRIME_CUTOFF_CAP {
        let all = cached_primes();
        &all[..all.partition_point(|&p| p <= cutoff)]
    } else {
        owned = primes_up_to(cutoff);
        &owned
    };
    let mut body = 0.0;
    let mut comp = 0.0;
    for &p in primes.iter().rev() {
        let term = local.log_at(p as f64) - comp;
        let next = body + term;
        comp = (next - body) - term;
        body = next;
    }
    let tail = if local.series_ok(cutoff as f64) {
        local.series_tail(primes, cutoff as f64)
    } else {
        local.integral_tail(cutoff as f64)
    };
    Ok(body + tail)
}

fn check(k: f64, rel_tol: f64) -> Result<()> {
    if !k.is_finite() || k < 0.0 {
        return domain(format!("a(k) needs finite k >= 0, got {k}"));
    }
    if !(rel_tol > 0.0) {
        return domain(format!("a(k) needs rel_tol > 0, got {rel_tol}"));
    }
    Ok(())
}

struct LocalFactor {
    k: f64,
    rel_tol: f64,
    /// ê_j with log[(1−x)^{k²} Σ c_m² x^m] = Σ_{j≥2} ê_j y^j, y = k²x; index j.
    series: Vec<f64>,
}

impl LocalFactor {
    fn new(k: f64, rel_tol: f64) -> Self {
        let n = SERIES_TERMS;
        let mut a = vec![0.0; n + 1];
        // scaled by k^{−2m} so the coefficients stay bounded for large k
        let mut c = 1.0;
        a[0] = 1.0;
        for m in 0..n {
            c *= (m as f64 + k) / ((m as f64 + 1.0) * k);
            a[m + 1] = c * c;
        }
        // b = log A via n·b_n = n·a_n − Σ_{j<n} j·b_j·a_{n−j}
        let mut b = vec![0.0; n + 1];
        for m in 1..=n {
            let mut acc = m as f64 * a[m];
            for j in 1..m {
                acc -= j as f64 * b[j] * a[m - j];
            }
            b[m] = acc / m as f64;
        }
        let k2 = k * k;
        let series = (0..=n)
            .map(|j| if j == 0 { 0.0 } else { b[j] - k2.powi(1 - j as i32) / j as f64 })
            .collect();
        Self { k, rel_tol, series }
    }

    fn series_ok(&self, p: f64) -> bool {
        self.k * self.k / p <= SERIES_SWITCH
    }

    /// Log of the local factor at p (p need not be prime).
    fn log_at(&self, p: f64) -> f64 {
        let x = 1.0 / p;
        if self.series_ok(p) {
            let y = self.k * self.k * x;
            let mut acc = 0.0;
            for j in (2..self.series.len()).rev() {
                acc = acc * y + self.series[j];
            }
            return acc * y * y;
        }
        self.log_direct(x)
    }

    fn log_direct(&self, x: f64) -> f64 {
        let k = self.k;
        // log of c_m² x^m, accumulated until past the peak and negligible
        let mut logs = Vec::with_capacity(64);
        let mut lt = 0.0f64;
        let mut peak = 0.0f64;
        let lx = x.ln();
        let floor = self.rel_tol.min(1e-17).ln() - 5.0;
        let mut m = 0usize;
        loop {
            let mf = m as f64;
            let ratio = 2.0 * ((mf + k) / (mf + 1.0)).ln() + lx;
            lt += ratio;
            m += 1;
            logs.push(lt);
            peak = peak.max(lt);
            if ratio < 0.0 && lt < peak + floor {
                break;
            }
        }
        let sum: f64 = logs.iter().map(|&l| (l - peak).exp()).sum();
        let log_sum = if peak == 0.0 {
            sum.ln_1p()
        } else {
            peak + ((-peak).exp() + sum).ln()
        };
        k * k * (-x).ln_1p() + log_sum
    }

    /// Σ_{p > cutoff} via Σ_j e_j·Σ_{p>cutoff} p^{−j}.
    fn series_tail(&self, primes: &[u64], cutoff: f64) -> f64 {
        let mut s2 = 0.0;
        let mut s3 = 0.0;
        for &p in primes.iter().rev() {
            let x = 1.0 / p as f64;
            s2 += x * x;
            s3 += x * x * x;
        }
        let lp = cutoff.ln();
        let k2 = self.k * self.k;
        let mut tail = self.series[2] * k2 * k2 * (PRIME_ZETA_2 - s2) + self.series[3] * k2.powi(3) * (PRIME_ZETA_3 - s3);
        for j in 4..self.series.len() {
            // Σ_{p>P} p^{−j} ≈ ∫_P^∞ x^{−j}/log x dx = E1((j−1) log P)
            let tj = exp_integral_e1(Complex64::new((j - 1) as f64 * lp, 0.0))
                .map(|z| z.re)
                .unwrap_or(0.0);
            let add = self.series[j] * (j as f64 * k2.ln() + tj.ln()).exp();
            tail += add;
            if add.abs() < 1e-30 {
                break;
            }
        }
        tail
    }

    /// ∫_{cutoff}^∞ log-factor(x) / log x dx, in the variable u = log x.
    fn integral_tail(&self, cutoff: f64) -> f64 {
        let (nodes, weights) = super::quad::gauss_legendre(16);
        let u0 = cutoff.ln();
        let u1 = u0.max(4.0 * self.k.ln()) + 60.0;
        let width = 0.25;
        let panels = ((u1 - u0) / width).ceil() as usize;
        let mut total = 0.0;
        for i in 0..panels {
            let a = u0 + i as f64 * width;
            let b = (a + width).min(u1);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for (x, w) in nodes.iter().zip(weights.iter()) {
                let u = mid + half * x;
                let p = u.exp();
                total += w * half * self.log_at(p) * p / u;
            }
        }
        total
    }
}
