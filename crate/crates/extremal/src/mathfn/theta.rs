use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{log_gamma_complex, BERNOULLI_EVEN};

const ASYMPTOTIC_MIN: f64 = 10.0;

/// Riemann–Siegel θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π. Odd in t.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    if t < 0.0 {
        return -riemann_siegel_theta(-t);
    }
    if t >= ASYMPTOTIC_MIN {
        theta_asymptotic(t)
    } else {
        theta_direct(t)
    }
}

/// θ(t) straight from the complex log-gamma.
pub fn theta_direct(t: f64) -> f64 {
    log_gamma_complex(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

fn theta_asymptotic(t: f64) -> f64 {
    let mut acc = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0;
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut pow = inv;
    for (i, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let k = (i + 1) as f64;
        let scale = 1.0 - 2f64.powf(1.0 - 2.0 * k);
        acc += scale * b.abs() / (4.0 * k * (2.0 * k - 1.0)) * pow;
        pow *= inv2;
    }
    acc
}

/// θ′(t) to leading orders, used for Gram-point stepping.
pub fn theta_derivative(t: f64) -> f64 {
    0.5 * (t.abs() / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t)
}
