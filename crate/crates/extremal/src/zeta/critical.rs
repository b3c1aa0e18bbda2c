//! ζ(1/2 + it) and Hardy's Z(t): Euler–Maclaurin at small height,
//! Riemann–Siegel with tabulated correction terms above.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::mathfn::riemann_siegel_theta;

/// Heights below this use Euler–Maclaurin.
pub const RS_MIN_HEIGHT: f64 = 30.0;

/// B_2, B_4, ..., B_30.
const BERNOULLI: [f64; 15] = [
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
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// ζ(s) by Euler–Maclaurin summation, s ≠ 1, for moderate |Im s|.
pub fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
    let n = 15 + (s.im.abs() / 3.0).ceil() as usize;
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp();
    sum += n_pow * nf / (s - 1.0) + 0.5 * n_pow;
    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = n_pow / nf;
    for (i, b) in BERNOULLI.iter().enumerate() {
        let k = i + 1;
        sum += rising * pow * (b / fact);
        let j = 2 * k;
        rising *= (s + (j - 1) as f64) * (s + j as f64);
        fact *= ((j + 1) * (j + 2)) as f64;
        pow /= nf * nf;
    }
    sum
}

/// Z(t) from the Euler–Maclaurin value of ζ.
pub fn hardy_z_euler_maclaurin(t: f64) -> f64 {
    let z = zeta_euler_maclaurin(Complex64::new(0.5, t));
    (z * Complex64::from_polar(1.0, riemann_siegel_theta(t))).re
}

/// Hardy's Z(t), real, with ζ(1/2+it) = Z(t)e^{−iθ(t)}. Even in t.
pub fn hardy_z(t: f64) -> f64 {
    let t = t.abs();
    if t < RS_MIN_HEIGHT {
        hardy_z_euler_maclaurin(t)
    } else {
        hardy_z_riemann_siegel(t)
    }
}

/// ζ(1/2 + it); ζ(1/2 − it) is the conjugate.
pub fn zeta_critical(t: f64) -> Complex64 {
    if t < 0.0 {
        return zeta_critical(-t).conj();
    }
    if t < RS_MIN_HEIGHT {
        zeta_euler_maclaurin(Complex64::new(0.5, t))
    } else {
        Complex64::from_polar(hardy_z_riemann_siegel(t), -riemann_siegel_theta(t))
    }
}

/// Riemann–Siegel: main sum plus the correction series through C_7.
pub fn hardy_z_riemann_siegel(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor() as u64;
    let p = a - n as f64;
    let theta = riemann_siegel_theta(t);
    let mut main = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        main += (theta - t * kf.ln()).cos() / kf.sqrt();
    }
    let table = correction_table();
    let inv_a = 1.0 / a;
    let mut corr = 0.0;
    let mut pow = 1.0;
    for series in table {
        corr += pow * series.eval(p);
        pow *= inv_a;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * corr / a.sqrt()
}

/// Terms (derivative order, power of π, coefficient) of C_k = Σ c·Ψ^{(d)}(p)/π^e,
/// with Ψ(p) = cos(2π(p² − p − 1/16))/cos(2πp).
const CORRECTION_TERMS: [&[(usize, i32, f64)]; 8] = [
    &[(0, 0, 1.0)],
    &[(3, 2, -1.0 / 96.0)],
    &[(6, 4, 1.0 / 18432.0), (2, 2, 1.0 / 64.0)],
    &[(9, 6, -1.0 / 5308416.0), (5, 4, -1.0 / 3840.0), (1, 2, -1.0 / 64.0)],
    &[
        (12, 8, 1.0 / 2038431744.0),
        (8, 6, 11.0 / 5898240.0),
        (4, 4, 19.0 / 24576.0),
        (0, 2, 1.0 / 128.0),
    ],
    &[
        (15, 10, -1.0 / 978447237120.0),
        (11, 8, -7.0 / 849346560.0),
        (7, 6, -901.0 / 82575360.0),
        (3, 4, -5.0 / 3072.0),
    ],
    &[
        (18, 12, 1.0 / 563585608581120.0),
        (14, 10, 17.0 / 652298158080.0),
        (10, 8, 18889.0 / 237817036800.0),
        (6, 6, 367.0 / 7864320.0),
        (2, 4, 5.0 / 2048.0),
    ],
    &[
        (21, 14, -1.0 / 378729528966512640.0),
        (17, 12, -1.0 / 15655155793920.0),
        (13, 10, -2131.0 / 5707608883200.0),
        (9, 8, -6649.0 / 11890851840.0),
        (5, 6, -407.0 / 2621440.0),
        (1, 4, -5.0 / 2048.0),
    ],
];

const CHEB_NODES: usize = 64;

/// Chebyshev series on p ∈ [0, 1].
struct Chebyshev {
    coeffs: Vec<f64>,
}

impl Chebyshev {
    fn eval(&self, p: f64) -> f64 {
        let x = 2.0 * p - 1.0;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs[0]
    }
}

fn psi(z: Complex64) -> Complex64 {
    let num = (2.0 * PI * (z * z - z - 1.0 / 16.0)).cos();
    num / (2.0 * PI * z).cos()
}

/// Ψ^{(m)}(p0) for m = 0..=max_order by a Cauchy integral on a circle of radius ½.
fn psi_derivatives(p0: f64, max_order: usize) -> Vec<f64> {
    let points = 96;
    let r = 0.5;
    let samples: Vec<(Complex64, Complex64)> = (0..points)
        .map(|j| {
            let phi = 2.0 * PI * (j as f64 + 0.5) / points as f64;
            let w = Complex64::from_polar(1.0, phi);
            (w, psi(Complex64::new(p0, 0.0) + w * r))
        })
        .collect();
    let mut out = Vec::with_capacity(max_order + 1);
    let mut fact = 1.0;
    for m in 0..=max_order {
        if m > 0 {
            fact *= m as f64;
        }
        let sum: Complex64 = samples.iter().map(|(w, f)| f * w.powi(-(m as i32))).sum();
        out.push((sum / points as f64).re * fact / r.powi(m as i32));
    }
    out
}

fn correction_table() -> &'static [Chebyshev] {
    static TABLE: OnceLock<Vec<Chebyshev>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = CHEB_NODES;
        let xs: Vec<f64> = (0..n).map(|j| (PI * (j as f64 + 0.5) / n as f64).cos()).collect();
        let derivs: Vec<Vec<f64>> = xs.iter().map(|&x| psi_derivatives(0.5 * (x + 1.0), 21)).collect();
        CORRECTION_TERMS
            .iter()
            .map(|terms| {
                let values: Vec<f64> = derivs
                    .iter()
                    .map(|d| terms.iter().map(|&(m, e, c)| c * d[m] / PI.powi(e)).sum())
                    .collect();
                let coeffs = (0..n)
                    .map(|k| {
                        let s: f64 = (0..n)
                            .map(|j| values[j] * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos())
                            .sum();
                        s * if k == 0 { 1.0 } else { 2.0 } / n as f64
                    })
                    .collect();
                Chebyshev { coeffs }
            })
            .collect()
    })
}
