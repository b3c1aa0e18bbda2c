//! The hybrid product ζ ≈ P_X·Z_X: a truncated Euler product times a smoothed
//! product over nearby zeros.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::E;
use std::sync::OnceLock;

use super::critical::zeta_critical;
use super::zeros::ZeroTable;
use crate::error::{domain, Error, Result};
use crate::mathfn::quad::gauss_legendre;
use crate::mathfn::{exp_integral_e1, VonMangoldtTable, EULER_GAMMA};

/// Per-term tolerance that sets the default zero window.
pub const DEFAULT_WINDOW_TOL: f64 = 1e-9;
const RESIDUAL_FLOOR: f64 = 1e-12;
const PANEL_NODES: usize = 64;
/// Oscillation (radians) allowed per quadrature panel.
const PANEL_PHASE: f64 = 8.0;

/// log P_X(s) = Σ_{n≤X} Λ(n)/(n^s log n).
pub fn log_p_x(s: Complex64, x: f64, table: &VonMangoldtTable) -> Result<Complex64> {
    if !(x.is_finite() && x <= table.limit as f64) {
        return domain(format!("X = {x} exceeds the von Mangoldt table limit {}", table.limit));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    if x < 2.0 {
        return Ok(sum);
    }
    for (n, lam) in table.prime_powers(x.floor() as u64) {
        let ln = (n as f64).ln();
        sum += (-s * ln).exp() * (lam / ln);
    }
    Ok(sum)
}

/// P_X(s), the exponential of the sharp prime-power sum.
pub fn p_x(s: Complex64, x: f64, table: &VonMangoldtTable) -> Result<Complex64> {
    Ok(log_p_x(s, x, table)?.exp())
}

/// P_X with the prime-power weights tapered by v(n^{1/log X}) = ∫_{n^{1/log X}}^∞ u.
/// With this weighting P_X·Z_X matches ζ up to the trivial-zero terms; kept as
/// a diagnostic beside the sharp version.
pub fn p_x_smoothed(s: Complex64, x: f64, table: &VonMangoldtTable, weight: Weight) -> Result<Complex64> {
    if !(x.is_finite() && x <= table.limit as f64) {
        return domain(format!("X = {x} exceeds the von Mangoldt table limit {}", table.limit));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    if x < 2.0 {
        return Ok(sum.exp());
    }
    let lx = x.ln();
    for (n, lam) in table.prime_powers(x.floor() as u64) {
        let ln = (n as f64).ln();
        let v = weight.tail_mass((ln / lx).exp(), x);
        sum += (-s * ln).exp() * (lam * v / ln);
    }
    Ok(sum.exp())
}

/// Matrix size matched to height t and crossover X: ⌊log t/(c log X)⌋, at least 1.
/// The constant c is a modelling choice; [`default_dimension_constant`] gives e^γ.
pub fn model_dimension(t: f64, crossover: f64, constant: f64) -> Result<usize> {
    if !(t > 1.0 && t.is_finite()) || !(crossover > 1.0 && crossover.is_finite()) {
        return domain(format!("model dimension needs t > 1 and X > 1, got t = {t}, X = {crossover}"));
    }
    if !(constant > 0.0 && constant.is_finite()) {
        return domain(format!("dimension constant must be positive, got {constant}"));
    }
    Ok(((t.ln() / (constant * crossover.ln())).floor() as usize).max(1))
}

pub fn default_dimension_constant() -> f64 {
    EULER_GAMMA.exp()
}

/// Smooth weight on [e^{1−1/X}, e] with unit mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Weight {
    /// exp(−1/(1−τ²)) in the affine coordinate τ ∈ (−1, 1).
    Bump,
    /// (1+τ)²·exp(−1/(1−τ²)), leaning toward the right end.
    Tilted,
}

impl Weight {
    fn shape(self, tau: f64) -> f64 {
        if tau.abs() >= 1.0 {
            return 0.0;
        }
        let b = (-1.0 / (1.0 - tau * tau)).exp();
        match self {
            Weight::Bump => b,
            Weight::Tilted => (1.0 + tau) * (1.0 + tau) * b,
        }
    }

    /// ∫_{−1}^{1} shape(τ) dτ.
    fn shape_mass(self) -> f64 {
        static MASS: OnceLock<[f64; 2]> = OnceLock::new();
        let m = MASS.get_or_init(|| {
            let panels = 64;
            let h = 2.0 / panels as f64;
            let (x, w) = gl64();
            let mass = |wt: Weight| -> f64 {
                (0..panels)
                    .map(|p| {
                        let mid = -1.0 + h * (p as f64 + 0.5);
                        x.iter().zip(w).map(|(&xi, &wi)| wi * wt.shape(mid + 0.5 * h * xi)).sum::<f64>() * 0.5 * h
                    })
                    .sum()
            };
            [mass(Weight::Bump), mass(Weight::Tilted)]
        });
        match self {
            Weight::Bump => m[0],
            Weight::Tilted => m[1],
        }
    }

    /// u(x) for crossover X.
    pub fn density(self, x: f64, crossover: f64) -> f64 {
        let (lo, hi) = support(crossover);
        if x <= lo || x >= hi {
            return 0.0;
        }
        let half = 0.5 * (hi - lo);
        let tau = (x - 0.5 * (lo + hi)) / half;
        self.shape(tau) / (self.shape_mass() * half)
    }

    /// v(y) = ∫_y^∞ u(x) dx.
    pub fn tail_mass(self, y: f64, crossover: f64) -> f64 {
        let (lo, hi) = support(crossover);
        if y <= lo {
            return 1.0;
        }
        if y >= hi {
            return 0.0;
        }
        let tau0 = (y - 0.5 * (lo + hi)) / (0.5 * (hi - lo));
        let (x, w) = gl64();
        let half = 0.5 * (1.0 - tau0);
        let mid = 0.5 * (1.0 + tau0);
        let part: f64 = x.iter().zip(w).map(|(&xi, &wi)| wi * self.shape(mid + half * xi)).sum::<f64>() * half;
        part / self.shape_mass()
    }
}

/// Support [e^{1−1/X}, e] of u.
fn support(crossover: f64) -> (f64, f64) {
    ((1.0 - 1.0 / crossover).exp(), E)
}

fn gl64() -> &'static (Vec<f64>, Vec<f64>) {
    static NODES: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre(PANEL_NODES))
}

/// Canonical bump u(x) for crossover X.
pub fn u_weight(x: f64, crossover: f64) -> f64 {
    Weight::Bump.density(x, crossover)
}

/// U(z) = ∫ u(x) E1(z log x) dx with the canonical bump.
pub fn big_u(z: Complex64, crossover: f64) -> Result<Complex64> {
    big_u_with(z, crossover, Weight::Bump, PANEL_NODES)
}

/// U(z) for a chosen weight and nodes per panel. Panels are added as the
/// integrand's oscillation across the support grows with |z|.
pub fn big_u_with(z: Complex64, crossover: f64, weight: Weight, nodes: usize) -> Result<Complex64> {
    if !(crossover > 1.0 && crossover.is_finite()) {
        return domain(format!("crossover X must exceed 1, got {crossover}"));
    }
    if z.re < 0.0 || z.norm() == 0.0 {
        return domain(format!("U(z) needs Re z >= 0 and z != 0, got {z}"));
    }
    let owned;
    let (x, w) = if nodes == PANEL_NODES {
        gl64()
    } else {
        owned = gauss_legendre(nodes);
        &owned
    };
    let (lo, hi) = support(crossover);
    let log_span = hi.ln() - lo.ln();
    let panels = (z.norm() * log_span / PANEL_PHASE).ceil().max(1.0) as usize;
    let h = 2.0 / panels as f64;
    let half_support = 0.5 * (hi - lo);
    let mid_support = 0.5 * (hi + lo);
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = -1.0 + h * (p as f64 + 0.5);
        for (&xi, &wi) in x.iter().zip(w) {
            let tau = mid + 0.5 * h * xi;
            let shape = weight.shape(tau);
            if shape == 0.0 {
                continue;
            }
            let xv = mid_support + half_support * tau;
            sum += exp_integral_e1(z * xv.ln())? * (wi * shape);
        }
    }
    Ok(sum * (0.5 * h / weight.shape_mass()))
}

/// How many zeros Z_X sums over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroWindow {
    /// Half-width W where |U(iyL)| stays below the tolerance for y ≥ W.
    Tolerance(f64),
    /// Explicit half-width.
    Fixed(f64),
}

impl Default for ZeroWindow {
    fn default() -> Self {
        ZeroWindow::Tolerance(DEFAULT_WINDOW_TOL)
    }
}

/// Half-width W such that sampled |U(i y log X)| < tol for all y ∈ [W, 4W].
///
/// The decay of U along the imaginary axis is only polynomial (the weight's
/// smoothness sets the rate), so W grows like a power of 1/tol.
pub fn window_half_width(crossover: f64, tol: f64, weight: Weight) -> Result<f64> {
    if !(tol > 0.0) {
        return domain(format!("window tolerance must be positive, got {tol}"));
    }
    let l = crossover.ln();
    let envelope = |y0: f64| -> Result<f64> {
        let mut m: f64 = 0.0;
        for j in 0..=24 {
            let y = y0 * 4f64.powf(j as f64 / 24.0);
            m = m.max(big_u_with(Complex64::new(0.0, y * l), crossover, weight, PANEL_NODES)?.norm());
        }
        Ok(m)
    };
    let mut w = 1.0;
    while envelope(w)? >= tol {
        w *= 1.25;
        if w > 1e6 {
            return Err(Error::Numerical { iterations: 0, residual: tol });
        }
    }
    Ok(w)
}

/// log Z_X(s) = −Σ_ρ U((s−ρ) log X) over ρ = 1/2 ± iγ with |Im ρ − Im s| ≤ W.
pub fn log_z_x(s: Complex64, crossover: f64, zeros: &ZeroTable, window: ZeroWindow, weight: Weight) -> Result<Complex64> {
    let w = match window {
        ZeroWindow::Tolerance(tol) => window_half_width(crossover, tol, weight)?,
        ZeroWindow::Fixed(w) if w > 0.0 => w,
        ZeroWindow::Fixed(w) => return domain(format!("zero window must be positive, got {w}")),
    };
    let t = s.im;
    if t.abs() + w > zeros.t_max() {
        return domain(format!(
            "zero table covers (0, {}] but Z_X at height {t} needs zeros up to {:.1} (window half-width {w:.1})",
            zeros.t_max(),
            t.abs() + w
        ));
    }
    let l = crossover.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut add = |gamma: f64| -> Result<()> {
        let z = (s - Complex64::new(0.5, gamma)) * l;
        if z.norm() == 0.0 {
            return domain(format!("s = {s} is a listed zero"));
        }
        sum += big_u_with(z, crossover, weight, PANEL_NODES)?;
        Ok(())
    };
    for &g in zeros.window(t - w, t + w) {
        add(g)?;
    }
    for &g in zeros.window(-t - w, -t + w) {
        add(-g)?;
    }
    Ok(-sum)
}

/// Z_X(s) with the canonical bump and the default window.
pub fn z_x(s: Complex64, crossover: f64, zeros: &ZeroTable) -> Result<Complex64> {
    Ok(log_z_x(s, crossover, zeros, ZeroWindow::default(), Weight::Bump)?.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HybridDecomposition {
    pub t: f64,
    pub x: f64,
    pub p_value: Complex64,
    pub z_value: Complex64,
    pub zeta_value: Complex64,
    pub rel_residual: f64,
}

/// ζ(1/2+it) against P_X·Z_X with the canonical bump and default window.
pub fn hybrid_residual(t: f64, crossover: f64, zeros: &ZeroTable, table: &VonMangoldtTable) -> Result<HybridDecomposition> {
    hybrid_residual_with(t, crossover, zeros, table, ZeroWindow::default(), Weight::Bump)
}

pub fn hybrid_residual_with(
    t: f64,
    crossover: f64,
    zeros: &ZeroTable,
    table: &VonMangoldtTable,
    window: ZeroWindow,
    weight: Weight,
) -> Result<HybridDecomposition> {
    let s = Complex64::new(0.5, t);
    let p_value = p_x(s, crossover, table)?;
    let z_value = log_z_x(s, crossover, zeros, window, weight)?.exp();
    let zeta_value = zeta_critical(t.abs());
    let zeta_value = if t < 0.0 { zeta_value.conj() } else { zeta_value };
    let rel_residual = (zeta_value - p_value * z_value).norm() / zeta_value.norm().max(RESIDUAL_FLOOR);
    Ok(HybridDecomposition { t, x: crossover, p_value, z_value, zeta_value, rel_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_dimension_floor() {
        let c = default_dimension_constant();
        assert!((c - 1.781_072_417_990_198).abs() < 1e-14);
        // log(1e22)/(e^γ log 2) ≈ 41.03
        assert_eq!(model_dimension(1e22, 2.0, c).unwrap(), 41);
        assert_eq!(model_dimension(1e22, 2.0, 1.0).unwrap(), 73);
        assert_eq!(model_dimension(10.0, 1e6, c).unwrap(), 1);
        assert!(model_dimension(1e3, 1.0, c).is_err());
        assert!(model_dimension(1e3, 10.0, 0.0).is_err());
    }
    use crate::mathfn::quad::integrate;
    use crate::mathfn::sieve_von_mangoldt;

    #[test]
    fn u_has_unit_mass() {
        for &x in &[2.5, 10.0, 50.0] {
            let (lo, hi) = support(x);
            let panels = 32;
            let h = (hi - lo) / panels as f64;
            for wt in [Weight::Bump, Weight::Tilted] {
                let m: f64 = (0..panels)
                    .map(|p| integrate(|v| wt.density(v, x), lo + h * p as f64, lo + h * (p + 1) as f64, 64))
                    .sum();
                assert!((m - 1.0).abs() < 1e-10, "X={x} {wt:?} mass={m}");
            }
        }
    }

    #[test]
    fn u_flat_at_ends() {
        let x = 10.0;
        let (lo, hi) = support(x);
        assert!(u_weight(lo + 1e-12, x) < 1e-30);
        assert!(u_weight(hi - 1e-12, x) < 1e-30);
        assert_eq!(u_weight(lo - 1e-3, x), 0.0);
    }

    #[test]
    fn tail_mass_limits() {
        let x = 20.0;
        let (lo, hi) = support(x);
        assert_eq!(Weight::Bump.tail_mass(lo, x), 1.0);
        assert_eq!(Weight::Bump.tail_mass(hi, x), 0.0);
        assert!((Weight::Bump.tail_mass(0.5 * (lo + hi), x) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn u_refinement_and_midpoint() {
        let x = 200.0;
        let z = Complex64::new(0.7, 3.0);
        let a = big_u_with(z, x, Weight::Bump, 64).unwrap();
        let b = big_u_with(z, x, Weight::Bump, 128).unwrap();
        assert!((a - b).norm() < 1e-8);
        let (lo, hi) = support(x);
        let mid = exp_integral_e1(z * (0.5 * (lo + hi)).ln()).unwrap();
        assert!((a - mid).norm() / mid.norm() < 1e-2);
        assert!(big_u(Complex64::new(-0.1, 1.0), x).is_err());
    }

    #[test]
    fn p_x_examples() {
        let table = sieve_von_mangoldt(1000).unwrap();
        let half = Complex64::new(0.5, 0.0);
        assert_eq!(p_x(half, 1.5, &table).unwrap(), Complex64::new(1.0, 0.0));
        let v = p_x(half, 2.0, &table).unwrap();
        assert!((v.re - 0.5f64.sqrt().exp()).abs() < 1e-14 && v.im == 0.0);
        for &x in &[50.0f64, 500.0] {
            let lp = p_x(half, x, &table).unwrap().norm().ln();
            let exact: f64 = table.prime_powers(x as u64).map(|(n, l)| l / ((n as f64).sqrt() * (n as f64).ln())).sum();
            assert!(lp <= exact + 1e-12);
            let ratio = lp / (3.0 * x.sqrt() / x.ln());
            if x == 50.0 {
                assert!(ratio <= 1.0);
            } else {
                assert!(ratio < 1.1, "{ratio}");
            }
        }
        assert!(p_x(half, 2000.0, &table).is_err());
    }

    #[test]
    fn window_grows_as_tolerance_tightens() {
        let loose = window_half_width(20.0, 1e-4, Weight::Bump).unwrap();
        let tight = window_half_width(20.0, 1e-7, Weight::Bump).unwrap();
        assert!(loose < tight);
    }
}
