use num_complex::Complex64;

use crate::error::{domain, Result};

pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Even-index Bernoulli numbers B_2, B_4, ..., B_20.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

// Stirling's series is used once the argument clears this point.
const STIRLING_MIN: f64 = 15.0;

fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut acc = 0.0;
    for (i, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let k = (i + 1) as f64;
        acc += b / (2.0 * k * (2.0 * k - 1.0)) * pow;
        pow *= inv2;
    }
    acc
}

/// log Γ(x) for x > 0, without input checks.
pub fn lgamma(x: f64) -> f64 {
    if x >= STIRLING_MIN {
        return (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_tail(x);
    }
    let mut shifted = x;
    let mut log_prod = 0.0;
    while shifted < STIRLING_MIN {
        log_prod += shifted.ln();
        shifted += 1.0;
    }
    lgamma(shifted) - log_prod
}

/// log Γ(x) for real x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return domain(format!("log_gamma needs a finite positive argument, got {x}"));
    }
    Ok(lgamma(x))
}

/// Analytic log Γ(z) for Re z > 0, continuous in z (not reduced mod 2πi).
pub fn log_gamma_complex(z: Complex64) -> Complex64 {
    let mut shifted = z;
    let mut log_prod = Complex64::new(0.0, 0.0);
    while shifted.re < STIRLING_MIN && shifted.norm() < 2.0 * STIRLING_MIN {
        log_prod += shifted.ln();
        shifted += 1.0;
    }
    let inv = shifted.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut tail = Complex64::new(0.0, 0.0);
    for (i, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let k = (i + 1) as f64;
        tail += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    (shifted - 0.5) * shifted.ln() - shifted + LN_SQRT_2PI + tail - log_prod
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
        let half = 0.5 * std::f64::consts::PI.ln();
        assert!((log_gamma(0.5).unwrap() - half).abs() < 1e-14);
        assert!((log_gamma(10.0).unwrap() - 362880f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
        assert!(log_gamma(f64::INFINITY).is_err());
    }

    #[test]
    fn factorials_exact() {
        let mut lf = 0.0f64;
        for n in 1..170u32 {
            lf += (n as f64).ln();
            let g = lgamma(n as f64 + 1.0);
            assert!((g - lf).abs() <= 1e-12 * lf.max(1.0), "n={n}");
        }
    }

    #[test]
    fn complex_matches_real_on_axis() {
        for &x in &[0.3, 1.0, 2.5, 7.0, 20.0, 123.4] {
            let c = log_gamma_complex(Complex64::new(x, 0.0));
            assert!((c.re - lgamma(x)).abs() < 1e-12);
            assert!(c.im.abs() < 1e-14);
        }
    }

    #[test]
    fn complex_recurrence() {
        // log Γ(z+1) = log Γ(z) + log z, up to the branch
        let z = Complex64::new(0.25, 3.7);
        let lhs = log_gamma_complex(z + 1.0);
        let rhs = log_gamma_complex(z) + z.ln();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn reflection_on_quarter_line() {
        // |Γ(1/4 + iy)|² via Γ(s)Γ(1-s) = π / sin(πs) is not directly usable;
        // use |Γ(1/2 + iy)|² = π / cosh(πy) instead.
        for &y in &[0.5, 2.0, 9.0] {
            let g = log_gamma_complex(Complex64::new(0.5, y));
            let expect = 0.5 * (std::f64::consts::PI / (std::f64::consts::PI * y).cosh()).ln();
            assert!((g.re - expect).abs() < 1e-12, "y={y}");
        }
    }
}
