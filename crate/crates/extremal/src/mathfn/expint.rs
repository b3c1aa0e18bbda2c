use num_complex::Complex64;

use super::gamma::EULER_GAMMA;
use crate::error::{domain, Result};

const SERIES_RADIUS: f64 = 4.0;
const MAX_CF_TERMS: usize = 100_000;

/// Exponential integral E1(z) = ∫_z^∞ e^{−w}/w dw on the closed right half-plane.
///
/// The imaginary axis (minus the origin) is accepted: the principal branch is
/// unambiguous there and the zero sum of the hybrid product evaluates E1 on it.
pub fn exp_integral_e1(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.re < 0.0 || z.norm() == 0.0 {
        return domain(format!("E1 needs Re z >= 0 and z != 0, got {z}"));
    }
    if z.norm() <= SERIES_RADIUS {
        Ok(e1_series(z))
    } else {
        Ok(e1_continued_fraction(z))
    }
}

fn e1_series(z: Complex64) -> Complex64 {
    // −γ − log z − Σ_{n≥1} (−z)^n / (n·n!)
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..200 {
        let nf = n as f64;
        term *= -z / nf;
        let add = term / nf;
        sum += add;
        if add.norm() < 1e-17 * sum.norm().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn e1_continued_fraction(z: Complex64) -> Complex64 {
    // modified Lentz on e^{-z} / (z + 1 − 1²/(z + 3 − 2²/(z + 5 − ...)))
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_CF_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = (d * an + b).inv();
        c = b + c.inv() * an;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn real_values() {
        assert!(rel(exp_integral_e1(c(1.0, 0.0)).unwrap(), c(0.219_383_934_395_520_27, 0.0)) < 1e-12);
        assert!(rel(exp_integral_e1(c(0.1, 0.0)).unwrap(), c(1.822_923_958_419_390_6, 0.0)) < 1e-12);
        let z = 50.0;
        let v = exp_integral_e1(c(z, 0.0)).unwrap().re * z * z.exp();
        assert!((0.97..=1.0).contains(&v), "{v}");
    }

    #[test]
    fn imaginary_axis() {
        let v = exp_integral_e1(c(0.0, 4.0)).unwrap();
        assert!(rel(v, c(0.140_981_697_886_930_41, 0.187_406_812_154_156_44)) < 1e-10);
        let v = exp_integral_e1(c(0.0, 1.0)).unwrap();
        assert!(rel(v, c(-0.337_403_922_900_968_13, -0.624_713_256_427_713_6)) < 1e-12);
    }

    #[test]
    fn branches_meet_at_the_radius() {
        for k in 0..16 {
            let ang = (k as f64) / 15.0 * std::f64::consts::FRAC_PI_2;
            for r in [SERIES_RADIUS * 0.999, SERIES_RADIUS * 1.001] {
                let z = Complex64::from_polar(r, ang);
                let s = e1_series(z);
                let f = e1_continued_fraction(z);
                assert!(rel(s, f) < 1e-11, "z={z} {s} {f}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(exp_integral_e1(c(0.0, 0.0)).is_err());
        assert!(exp_integral_e1(c(-0.1, 1.0)).is_err());
        assert!(exp_integral_e1(c(f64::NAN, 1.0)).is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &x in &[0.5, 1.0, 2.0, 5.0] {
            let h = 1e-5;
            let z = c(x, 0.0);
            let fd = (exp_integral_e1(z + h).unwrap() - exp_integral_e1(z - h).unwrap()) / (2.0 * h);
            let exact = -(-z).exp() / z;
            assert!(rel(fd, exact) < 1e-6, "x={x}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let z = c(0.3, 7.5);
        let a = exp_integral_e1(z).unwrap();
        let b = exp_integral_e1(z.conj()).unwrap();
        assert!(rel(a, b.conj()) < 1e-13);
    }
}
