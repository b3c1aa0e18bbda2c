use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::seeding::{for_each_chunk, trial_rng};
use crate::ensembles::charpoly::MaxFinder;
use crate::ensembles::verblunsky::{
    log_abs_phi_at_one, log_charpoly_at_one_real, monic_coefficients, sample_real, sample_unitary,
};
use crate::ensembles::{angles_from_verblunsky, Kind};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Statistic {
    MaxOverTheta,
    AtPointZero,
    ImLogAtZero,
    CharpolyAtOne,
}

impl std::str::FromStr for Statistic {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "maxovertheta" | "max" => Ok(Statistic::MaxOverTheta),
            "atpointzero" | "zero" => Ok(Statistic::AtPointZero),
            "imlogatzero" | "imlog" => Ok(Statistic::ImLogAtZero),
            "charpolyatone" | "one" => Ok(Statistic::CharpolyAtOne),
            other => Err(format!("unknown statistic '{other}'")),
        }
    }
}

/// Either log K itself or λ with log K = N^λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Threshold {
    LogK(f64),
    Lambda(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub n: usize,
    pub threshold: Threshold,
    pub trials: u64,
    pub seed: u64,
    pub statistic: Statistic,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return domain("dimension must be positive");
        }
        if self.kind.is_real() && self.n % 2 != 0 {
            return domain(format!("{} needs even dimension, got {}", self.kind, self.n));
        }
        if self.trials == 0 {
            return domain("trials must be at least 1");
        }
        match self.threshold {
            Threshold::Lambda(l) if !(l > 0.0 && l < 1.0) => {
                return domain(format!("λ must lie in (0, 1), got {l}"))
            }
            Threshold::LogK(v) if !v.is_finite() => return domain("log K must be finite"),
            _ => {}
        }
        if self.statistic == Statistic::CharpolyAtOne && !self.kind.is_real() {
            return domain("CharpolyAtOne needs a symplectic or orthogonal ensemble");
        }
        Ok(())
    }

    pub fn log_k(&self) -> f64 {
        match self.threshold {
            Threshold::LogK(v) => v,
            Threshold::Lambda(l) => (self.n as f64).powf(l),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub log_k: f64,
    pub trials: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub log_p_hat: f64,
    /// Delta-method standard error of log p̂; NaN when there are no hits.
    pub std_err_log: f64,
    pub predicted_log_p: f64,
}

impl TailEstimate {
    pub fn std_err_usable(&self) -> bool {
        self.hits > 0 && self.std_err_log.is_finite()
    }
}

/// Minus the large-deviation rate at threshold `log_k`: −v²/(log N − log v)
/// for U(N), with the denominator doubled for Sp/SO.
pub fn predicted_log_p(kind: Kind, n: usize, log_k: f64) -> f64 {
    if log_k <= 0.0 {
        return 0.0;
    }
    let denom = (n as f64).ln() - log_k.ln();
    let denom = if kind.is_real() { 2.0 * denom } else { denom };
    -log_k * log_k / denom
}

/// Per-worker buffers for evaluating one statistic on fresh samples.
pub struct Evaluator {
    kind: Kind,
    n: usize,
    statistic: Statistic,
    alpha: Vec<Complex64>,
    alpha_real: Vec<f64>,
    coeffs: Vec<Complex64>,
    finder: Option<MaxFinder>,
}

impl Evaluator {
    pub fn new(kind: Kind, n: usize, statistic: Statistic) -> Self {
        let finder = (statistic == Statistic::MaxOverTheta).then(|| MaxFinder::new(n));
        Self {
            kind,
            n,
            statistic,
            alpha: Vec::with_capacity(n),
            alpha_real: Vec::with_capacity(n),
            coeffs: Vec::with_capacity(n + 1),
            finder,
        }
    }

    /// Draws one matrix and returns the statistic on the log scale
    /// (Im log Λ(0) itself for `ImLogAtZero`).
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        if self.kind.is_real() {
            sample_real(self.n, self.kind == Kind::Symplectic, rng, &mut self.alpha_real);
            match self.statistic {
                Statistic::AtPointZero | Statistic::CharpolyAtOne => {
                    return log_charpoly_at_one_real(&self.alpha_real)
                }
                // conjugation symmetry makes Im log Λ(0) vanish
                Statistic::ImLogAtZero => return 0.0,
                Statistic::MaxOverTheta => {
                    self.alpha.clear();
                    self.alpha.extend(self.alpha_real.iter().map(|&a| Complex64::new(a, 0.0)));
                }
            }
        } else {
            sample_unitary(self.n, rng, &mut self.alpha);
        }
        match self.statistic {
            Statistic::AtPointZero | Statistic::CharpolyAtOne => log_abs_phi_at_one(&self.alpha),
            Statistic::MaxOverTheta => {
                monic_coefficients(&self.alpha, &mut self.coeffs);
                self.finder.as_mut().expect("finder").max_from_coeffs(&self.coeffs).log_value
            }
            Statistic::ImLogAtZero => {
                let angles = angles_from_verblunsky(&self.alpha, false);
                angles.iter().map(|&a| 0.5 * (a - PI)).sum()
            }
        }
    }
}

/// Monte Carlo estimate of P{statistic ≥ log K}.
pub fn estimate_tail(cfg: &ExperimentConfig) -> Result<TailEstimate> {
    cfg.validate()?;
    let log_k = cfg.log_k();
    let parts = for_each_chunk(cfg.trials, |start, end| {
        let mut eval = Evaluator::new(cfg.kind, cfg.n, cfg.statistic);
        (start..end)
            .filter(|&i| eval.sample(&mut trial_rng(cfg.seed, i)) >= log_k)
            .count() as u64
    });
    let hits: u64 = parts.iter().sum();
    let m = cfg.trials as f64;
    let p_hat = hits as f64 / m;
    let std_err_log = if hits > 0 { ((1.0 - p_hat) / (m * p_hat)).sqrt() } else { f64::NAN };
    Ok(TailEstimate {
        log_k,
        trials: cfg.trials,
        hits,
        p_hat,
        log_p_hat: p_hat.ln(),
        std_err_log,
        predicted_log_p: predicted_log_p(cfg.kind, cfg.n, log_k),
    })
}
