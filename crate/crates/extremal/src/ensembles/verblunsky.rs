//! Sparse Haar sampling by independent Verblunsky coefficients and the
//! Szegő recursion for the characteristic polynomial.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Beta, Distribution};
use std::f64::consts::TAU;

/// Coefficients α_0..α_{N−1} of a Haar-random U(N); |α_{N−1}| = 1.
pub fn sample_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R, out: &mut Vec<Complex64>) {
    out.clear();
    for k in 0..n {
        let phase = rng.random::<f64>() * TAU;
        let r = if k + 1 == n {
            1.0
        } else {
            // |α_k|² ~ Beta(1, N−k−1)
            let u: f64 = rng.random();
            (1.0 - u.powf(1.0 / (n - k - 1) as f64)).sqrt()
        };
        out.push(Complex64::from_polar(r, phase));
    }
}

/// Real coefficients α_0..α_{N−1} of Haar Sp(N) (`symplectic`) or SO(N), N even;
/// α_{N−1} = −1.
pub fn sample_real<R: Rng + ?Sized>(n: usize, symplectic: bool, rng: &mut R, out: &mut Vec<f64>) {
    debug_assert!(n % 2 == 0 && n > 0);
    let edge = if symplectic { 0.5 } else { -0.5 };
    out.clear();
    for k in 0..n - 1 {
        let (s, t) = if k % 2 == 0 {
            let m = (n - k - 2) as f64 / 2.0;
            (m + edge + 1.0, m + edge + 1.0)
        } else {
            ((n - k - 3) as f64 / 2.0 + 2.0 * edge + 2.0, (n - k - 1) as f64 / 2.0)
        };
        // density ∝ (1 − x)^{s−1} (1 + x)^{t−1} on [−1, 1]
        let b = Beta::new(t, s).expect("positive Beta parameters").sample(rng);
        out.push(2.0 * b - 1.0);
    }
    out.push(-1.0);
}

/// Φ_N(1) by the Szegő recursion, so |Λ(0)| = |Φ_N(1)|.
pub fn phi_at_one(alpha: &[Complex64]) -> Complex64 {
    let mut phi = Complex64::new(1.0, 0.0);
    for a in alpha {
        phi -= a.conj() * phi.conj();
    }
    phi
}

/// log |Φ_N(1)| accumulated in log form (no overflow at large N).
pub fn log_abs_phi_at_one(alpha: &[Complex64]) -> f64 {
    let mut unit = Complex64::new(1.0, 0.0);
    let mut log_mod = 0.0;
    for a in alpha {
        let next = unit - a.conj() * unit.conj();
        let m = next.norm();
        if m == 0.0 {
            return f64::NEG_INFINITY;
        }
        log_mod += m.ln();
        unit = next / m;
    }
    log_mod
}

/// log Z(U, 0) = log 2 + Σ log(1 − α_k) for real coefficients.
pub fn log_charpoly_at_one_real(alpha: &[f64]) -> f64 {
    alpha.iter().map(|a| (1.0 - a).ln()).sum()
}

/// Monic coefficients c_0..c_N of Φ_N(z) = Σ c_j z^j.
pub fn monic_coefficients(alpha: &[Complex64], out: &mut Vec<Complex64>) {
    let n = alpha.len();
    out.clear();
    out.resize(n + 1, Complex64::new(0.0, 0.0));
    out[0] = Complex64::new(1.0, 0.0);
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    for (k, a) in alpha.iter().enumerate() {
        prev[..=k].copy_from_slice(&out[..=k]);
        let ac = a.conj();
        // Φ_{k+1} = zΦ_k − ᾱ Φ*_k, with Φ*_k coefficients conj-reversed
        out[0] = -ac * prev[k].conj();
        for j in 1..=k {
            out[j] = prev[j - 1] - ac * prev[k - j].conj();
        }
        out[k + 1] = prev[k];
    }
}
