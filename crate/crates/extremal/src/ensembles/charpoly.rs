use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use super::{Kind, MaxResult, Spectrum};
use crate::error::{domain, Result};

/// Grid points per unit of dimension for the coarse maximum search.
pub const GRID_FACTOR: usize = 8;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// log |Λ(θ)| = Σ_n log(2|sin((θ_n − θ)/2)|); −∞ at an eigenangle.
pub fn log_abs_charpoly(s: &Spectrum, theta: f64) -> f64 {
    let term = |a: f64| (2.0 * (0.5 * (a - theta)).sin().abs()).ln();
    if s.kind.is_real() {
        s.angles.iter().map(|&a| term(a) + term(-a)).sum()
    } else {
        s.angles.iter().map(|&a| term(a)).sum()
    }
}

/// Σ_n Im log(1 − e^{i(θ_n − θ)}) with per-factor principal values.
pub fn im_log_charpoly(s: &Spectrum, theta: f64) -> Result<f64> {
    let mut total = 0.0;
    for a in s.full_angles() {
        let phi = (a - theta).rem_euclid(TAU);
        if phi == 0.0 || (TAU - phi) == 0.0 {
            return domain(format!("θ = {theta} is an eigenangle"));
        }
        // arg(1 − e^{iφ}) = (φ − π)/2 for φ ∈ (0, 2π)
        total += 0.5 * (phi - PI);
    }
    Ok(total)
}

/// Z(U, 0) = ∏ 2(1 − cos θ_j) over the stored angles of Sp/SO.
pub fn charpoly_at_one(s: &Spectrum) -> Result<f64> {
    if !s.kind.is_real() {
        return domain("charpoly_at_one applies to symplectic or orthogonal spectra");
    }
    Ok(s.angles.iter().map(|&a| 4.0 * (0.5 * a).sin().powi(2)).product())
}

/// Global maximum of log|Λ| over θ.
pub fn max_log_abs_charpoly(s: &Spectrum) -> MaxResult {
    let roots: Vec<Complex64> = s.full_angles().iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
    let coeffs = coefficients_from_roots(&roots);
    let mut finder = MaxFinder::new(s.dimension);
    let theta0 = finder.best_grid_point(&coeffs);
    refine(|t| log_abs_charpoly(s, t), theta0, finder.spacing())
}

/// Global maximum of log|Φ(e^{iθ})| for a polynomial given by its coefficients.
pub fn max_log_abs_from_coeffs(coeffs: &[Complex64]) -> MaxResult {
    MaxFinder::new(coeffs.len() - 1).max_from_coeffs(coeffs)
}

/// Reusable FFT plan and buffers for repeated maxima at a fixed degree.
pub struct MaxFinder {
    grid: usize,
    fft: Arc<dyn Fft<f64>>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl MaxFinder {
    pub fn new(degree: usize) -> Self {
        let grid = GRID_FACTOR * degree.max(1);
        let fft = FftPlanner::new().plan_fft_inverse(grid);
        let scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        Self { grid, fft, buffer: vec![Complex64::new(0.0, 0.0); grid], scratch }
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.grid as f64
    }

    fn best_grid_point(&mut self, coeffs: &[Complex64]) -> f64 {
        assert!(coeffs.len() <= self.grid, "degree exceeds the planned grid");
        self.buffer.fill(Complex64::new(0.0, 0.0));
        self.buffer[..coeffs.len()].copy_from_slice(coeffs);
        self.fft.process_with_scratch(&mut self.buffer, &mut self.scratch);
        let (best, _) = self
            .buffer
            .iter()
            .enumerate()
            .fold((0usize, f64::NEG_INFINITY), |(bi, bv), (i, v)| {
                let m = v.norm_sqr();
                if m > bv {
                    (i, m)
                } else {
                    (bi, bv)
                }
            });
        best as f64 * self.spacing()
    }

    pub fn max_from_coeffs(&mut self, coeffs: &[Complex64]) -> MaxResult {
        let theta0 = self.best_grid_point(coeffs);
        refine(|t| log_abs_horner(coeffs, t), theta0, self.spacing())
    }
}

fn log_abs_horner(coeffs: &[Complex64], theta: f64) -> f64 {
    let z = Complex64::from_polar(1.0, theta);
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c).norm().ln()
}

/// Golden-section search for the maximum of `f` on [θ0 − h, θ0 + h].
fn refine<F: Fn(f64) -> f64>(f: F, theta0: f64, h: f64) -> MaxResult {
    let f0 = f(theta0);
    let (mut a, mut b) = (theta0 - h, theta0 + h);
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > 1e-12 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1);
        }
    }
    let (t, v) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    let (t, v) = if v >= f0 { (t, v) } else { (theta0, f0) };
    MaxResult { theta_star: t.rem_euclid(TAU), log_value: v }
}

/// Coefficients (low to high) of ∏ (z − r).
pub fn coefficients_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); roots.len() + 1];
    c[0] = Complex64::new(1.0, 0.0);
    for (k, r) in roots.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            c[j] = c[j - 1] - r * c[j];
        }
        c[0] = -r * c[0];
    }
    c
}

/// Convenience for the unitary case.
pub fn unitary_spectrum(angles: Vec<f64>) -> Spectrum {
    let n = angles.len();
    Spectrum { kind: Kind::Unitary, dimension: n, angles }
}

#[cfg(test)]
mod tests {
    use super::super::sample_spectrum;
    use super::*;

    #[test]
    fn single_angle() {
        let s = unitary_spectrum(vec![0.3]);
        assert!((log_abs_charpoly(&s, 0.3 + PI) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_abs_charpoly(&s, 0.3), f64::NEG_INFINITY);
        let m = max_log_abs_charpoly(&s);
        assert!((m.log_value - 2f64.ln()).abs() < 1e-12);
        assert!((m.theta_star - (0.3 + PI)).abs() < 1e-6);
    }

    #[test]
    fn scalar_matrix_reaches_two_to_the_n() {
        let n = 12;
        let s = unitary_spectrum(vec![1.0; n]);
        let m = max_log_abs_charpoly(&s);
        assert!((m.log_value - n as f64 * 2f64.ln()).abs() < 1e-9);
        assert!((m.theta_star - (1.0 + PI)).abs() < 1e-5);
    }

    #[test]
    fn im_log_single() {
        let s = unitary_spectrum(vec![PI / 2.0]);
        assert!((im_log_charpoly(&s, 0.0).unwrap() + PI / 4.0).abs() < 1e-15);
        assert!(im_log_charpoly(&s, PI / 2.0).is_err());
    }

    #[test]
    fn im_log_symplectic_zero() {
        let s = sample_spectrum(Kind::Symplectic, 10, 3).unwrap();
        assert!(im_log_charpoly(&s, 0.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn complex_product_oracle() {
        let s = sample_spectrum(Kind::Unitary, 16, 8).unwrap();
        for &theta in &[0.0, 1.234, 4.0] {
            let prod = s.angles.iter().fold(Complex64::new(1.0, 0.0), |acc, &a| {
                acc * (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, a - theta))
            });
            assert!((prod.norm().ln() - log_abs_charpoly(&s, theta)).abs() < 1e-9);
            let im = im_log_charpoly(&s, theta).unwrap();
            let diff = (im - prod.arg()).rem_euclid(TAU);
            assert!(diff.min(TAU - diff) < 1e-9);
        }
    }

    #[test]
    fn charpoly_at_one_cases() {
        let s = Spectrum::new(Kind::Symplectic, 6, vec![PI; 3]).unwrap();
        assert!((charpoly_at_one(&s).unwrap() - 64.0).abs() < 1e-12);
        let s = Spectrum::new(Kind::SpecialOrthogonalEven, 4, vec![0.0, 1.0]).unwrap();
        assert_eq!(charpoly_at_one(&s).unwrap(), 0.0);
        let s = sample_spectrum(Kind::SpecialOrthogonalEven, 10, 5).unwrap();
        let z = charpoly_at_one(&s).unwrap();
        assert!((z - log_abs_charpoly(&s, 0.0).exp()).abs() < 1e-9 * z.max(1.0));
        assert!(charpoly_at_one(&unitary_spectrum(vec![1.0])).is_err());
    }

    #[test]
    fn max_matches_dense_grid() {
        let s = sample_spectrum(Kind::Unitary, 32, 12).unwrap();
        let m = max_log_abs_charpoly(&s);
        let dense = 1000 * 32;
        let brute = (0..dense)
            .map(|i| log_abs_charpoly(&s, TAU * i as f64 / dense as f64))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(m.log_value >= brute - 1e-12);
        assert!((m.log_value - brute).abs() < 1e-6);
    }

    #[test]
    fn roots_to_coefficients() {
        let r = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        let c = coefficients_from_roots(&r);
        assert!((c[0] + 1.0).norm() < 1e-15 && c[1].norm() < 1e-15 && (c[2] - 1.0).norm() < 1e-15);
    }
}
