use crate::error::{domain, Result};
use crate::mathfn::{lgamma, log_barnes_g, log_barnes_ratio};
use std::f64::consts::LN_2;

/// log E|Λ(0)|^{2k} over U(N).
pub fn cue_log_moment(n: usize, k: f64) -> Result<f64> {
    if n == 0 {
        return domain("dimension must be positive");
    }
    if !k.is_finite() || k < 0.0 {
        return domain(format!("moment order must be >= 0, got {k}"));
    }
    let nf = n as f64;
    Ok(log_barnes_ratio(k)? + log_barnes_g(1.0 + nf)? + log_barnes_g(1.0 + nf + 2.0 * k)?
        - 2.0 * log_barnes_g(1.0 + nf + k)?)
}

fn check(n: usize, s: f64) -> Result<()> {
    if n == 0 || n % 2 != 0 {
        return domain(format!("dimension must be even and positive, got {n}"));
    }
    if !s.is_finite() || s < 0.0 {
        return domain(format!("exponent must be >= 0, got {s}"));
    }
    Ok(())
}

/// log E{Z(U,0)^s} over Sp(N).
pub fn sp_log_mgf(n: usize, s: f64) -> Result<f64> {
    check(n, s)?;
    let h = (n / 2) as f64;
    let sum: f64 = (1..=n / 2)
        .map(|j| {
            let j = j as f64;
            lgamma(h + j + 1.0) + lgamma(s + j + 0.5) - lgamma(j + 0.5) - lgamma(s + h + j + 1.0)
        })
        .sum();
    Ok(n as f64 * s * LN_2 + sum)
}

/// log E{Z(U,0)^s} over SO(N), N even.
pub fn so_log_mgf(n: usize, s: f64) -> Result<f64> {
    check(n, s)?;
    let h = (n / 2) as f64;
    let sum: f64 = (1..=n / 2)
        .map(|j| {
            let j = j as f64;
            lgamma(h + j - 1.0) + lgamma(s + j - 0.5) - lgamma(j - 0.5) - lgamma(s + h + j - 1.0)
        })
        .sum();
    Ok(n as f64 * s * LN_2 + sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathfn::lgamma;

    // product oracle: M_N(2k) = ∏_{j=1}^N Γ(j)Γ(j+2k)/Γ(j+k)²
    fn product_oracle(n: usize, k: f64) -> f64 {
        (1..=n)
            .map(|j| {
                let j = j as f64;
                lgamma(j) + lgamma(j + 2.0 * k) - 2.0 * lgamma(j + k)
            })
            .sum()
    }

    #[test]
    fn second_moment_is_n_plus_one() {
        for n in 1..=200usize {
            let v = cue_log_moment(n, 1.0).unwrap();
            assert!((v - ((n + 1) as f64).ln()).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn matches_product_form() {
        for &(n, k) in &[(5usize, 0.5), (20, 2.0), (37, 1.7), (100, 3.25)] {
            let a = cue_log_moment(n, k).unwrap();
            let b = product_oracle(n, k);
            assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "n={n} k={k} {a} {b}");
        }
    }

    #[test]
    fn zeroth_moment() {
        assert!(cue_log_moment(10, 0.0).unwrap().abs() < 1e-12);
        assert!(sp_log_mgf(10, 0.0).unwrap().abs() < 1e-12);
        assert!(so_log_mgf(10, 0.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn small_exact_cases() {
        // Sp(2): Z = 2 − 2cos θ with density (2/π) sin²θ on [0, π]; E Z = 2, E Z² = 5
        assert!((sp_log_mgf(2, 1.0).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((sp_log_mgf(2, 2.0).unwrap() - 5f64.ln()).abs() < 1e-12);
        // SO(2): θ uniform on [0, π]; E Z = 2, E Z² = 6
        assert!((so_log_mgf(2, 1.0).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((so_log_mgf(2, 2.0).unwrap() - 6f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(sp_log_mgf(3, 1.0).is_err());
        assert!(so_log_mgf(0, 1.0).is_err());
        assert!(cue_log_moment(3, -1.0).is_err());
    }
}
