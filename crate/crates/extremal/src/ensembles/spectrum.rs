use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

use super::verblunsky::{sample_real, sample_unitary};
use super::{Kind, Spectrum};
use crate::error::{domain, Result};

/// Haar-random eigenangles, deterministic in (kind, N, seed).
pub fn sample_spectrum(kind: Kind, n: usize, seed: u64) -> Result<Spectrum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_spectrum_with(kind, n, &mut rng)
}

pub fn sample_spectrum_with<R: Rng + ?Sized>(kind: Kind, n: usize, rng: &mut R) -> Result<Spectrum> {
    if n == 0 {
        return domain("dimension must be positive");
    }
    if kind.is_real() && n % 2 != 0 {
        return domain(format!("{kind} needs even dimension, got {n}"));
    }
    let alpha: Vec<Complex64> = match kind {
        Kind::Unitary => {
            let mut a = Vec::with_capacity(n);
            sample_unitary(n, rng, &mut a);
            a
        }
        Kind::Symplectic | Kind::SpecialOrthogonalEven => {
            let mut a = Vec::with_capacity(n);
            sample_real(n, kind == Kind::Symplectic, rng, &mut a);
            a.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
        }
    };
    let angles = angles_from_verblunsky(&alpha, kind.is_real());
    Spectrum::new(kind, n, angles)
}

/// Prüfer phase ψ_{N−1}(θ) and its θ-derivative; strictly increasing in θ.
fn pruefer(alpha: &[Complex64], theta: f64) -> (f64, f64) {
    let mut psi = theta;
    let mut dpsi = 1.0;
    for a in &alpha[..alpha.len() - 1] {
        let w = Complex64::new(1.0, 0.0) - a.conj() * Complex64::from_polar(1.0, -psi);
        dpsi = 1.0 + dpsi * (1.0 - a.norm_sqr()) / w.norm_sqr();
        psi = theta + psi + 2.0 * w.arg();
    }
    (psi, dpsi)
}

/// Eigenangles of the CMV matrix with the given coefficients (|α_{N−1}| = 1).
/// For real coefficients only the angles in (0, π) are returned.
pub fn angles_from_verblunsky(alpha: &[Complex64], real_half: bool) -> Vec<f64> {
    let n = alpha.len();
    let last = alpha[n - 1].conj().arg();
    let (hi, count, first_target) = if real_half {
        (PI, n / 2, PI)
    } else {
        let v0 = pruefer(alpha, 0.0).0;
        let j = ((v0 - last) / TAU).ceil();
        (TAU, n, last + TAU * j)
    };
    let m = 4 * n + 4;
    let grid: Vec<f64> = (0..=m).map(|i| hi * i as f64 / m as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&t| pruefer(alpha, t).0).collect();
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let target = first_target + TAU * j as f64;
        let i = values.partition_point(|&v| v <= target).clamp(1, m) - 1;
        out.push(solve_phase(alpha, target, grid[i], grid[i + 1]).rem_euclid(TAU));
    }
    out.sort_by(f64::total_cmp);
    out
}

fn solve_phase(alpha: &[Complex64], target: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (v, d) = pruefer(alpha, x);
        let f = v - target;
        if f == 0.0 {
            return x;
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / d;
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() < 1e-15 || hi - lo < 1e-15 {
            return next;
        }
        x = next;
    }
    x
}
