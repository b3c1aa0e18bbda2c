use super::gamma::{lgamma, BERNOULLI_EVEN};
use crate::error::{domain, Result};

/// ζ'(−1), to 30 significant digits.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_929_213_919_660_242_7;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

// Integer arguments up to this size use the exact product recursion.
const EXACT_INTEGER_MAX: f64 = 1.0e6;
const ASYMPTOTIC_MIN: f64 = 20.0;

/// log G(x) for x ≥ 1, G the Barnes G-function.
pub fn log_barnes_g(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 1.0 {
        return domain(format!("log_barnes_g needs x >= 1, got {x}"));
    }
    if x.fract() == 0.0 && x <= EXACT_INTEGER_MAX {
        return Ok(log_g_integer(x as u64));
    }
    Ok(log_g_real(x))
}

/// G(n) = ∏_{j=1}^{n-1} Γ(j) = ∏_{i=1}^{n-2} i^{n-1-i}.
fn log_g_integer(n: u64) -> f64 {
    if n <= 2 {
        return 0.0;
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in 2..=(n - 2) {
        let term = (n - 1 - i) as f64 * (i as f64).ln() - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    sum
}

fn log_g_real(x: f64) -> f64 {
    let mut shifted = x;
    let mut log_gammas = 0.0;
    while shifted - 1.0 < ASYMPTOTIC_MIN {
        log_gammas += lgamma(shifted);
        shifted += 1.0;
    }
    log_g_asymptotic(shifted - 1.0) - log_gammas
}

/// Large-z expansion of log G(1 + z).
pub(crate) fn log_g_asymptotic(z: f64) -> f64 {
    let lz = z.ln();
    let mut acc = 0.5 * z * z * lz - 0.75 * z * z + 0.5 * z * LN_2PI - lz / 12.0
        + ZETA_PRIME_MINUS_ONE;
    let inv2 = 1.0 / (z * z);
    let mut pow = inv2;
    for k in 1..=8usize {
        let b = BERNOULLI_EVEN[k];
        acc += b / (4.0 * (k * (k + 1)) as f64) * pow;
        pow *= inv2;
    }
    acc
}

/// log(G(1+k)² / G(1+2k)), the random-matrix factor of the moment conjecture.
pub fn log_barnes_ratio(k: f64) -> Result<f64> {
    if !k.is_finite() || k < 0.0 {
        return domain(format!("Barnes ratio needs k >= 0, got {k}"));
    }
    Ok(2.0 * log_barnes_g(1.0 + k)? - log_barnes_g(1.0 + 2.0 * k)?)
}

/// The large-k expansion of log(G(1+k)²/G(1+2k)) without its O(1/k) remainder.
pub fn log_barnes_ratio_leading(k: f64) -> f64 {
    let lk = k.ln();
    let ln2 = std::f64::consts::LN_2;
    k * k * (-lk + 1.5 - 2.0 * ln2) - lk / 12.0 + ln2 / 12.0 + ZETA_PRIME_MINUS_ONE
}
