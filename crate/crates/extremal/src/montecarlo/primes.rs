use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::seeding::{for_each_chunk, trial_rng};
use crate::error::{domain, Result};
use crate::mathfn::primes_up_to;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimePhaseSummary {
    pub x: u64,
    pub trials: u64,
    pub mean: f64,
    pub variance: f64,
    pub excess_kurtosis: f64,
    /// ½ Σ_{p≤X} 1/p.
    pub variance_target: f64,
    /// Standard error of the sample variance, from the fourth moment.
    pub variance_std_err: f64,
    /// Standard error of the excess kurtosis under near-Gaussianity.
    pub kurtosis_std_err: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<f64>>,
}

/// Samples Y = Re Σ_{p≤X} z_p/√p with independent uniform phases z_p.
pub fn prime_phase_sample(x: u64, trials: u64, root: u64, keep_samples: bool) -> Result<PrimePhaseSummary> {
    if x < 2 {
        return domain(format!("X must be at least 2, got {x}"));
    }
    if trials < 2 {
        return domain("need at least two trials");
    }
    let weights: Vec<f64> = primes_up_to(x).iter().map(|&p| 1.0 / (p as f64).sqrt()).collect();
    let parts = for_each_chunk(trials, |start, end| {
        (start..end)
            .map(|i| {
                let mut rng = trial_rng(root, i);
                weights.iter().map(|w| w * (rng.random::<f64>() * TAU).cos()).sum::<f64>()
            })
            .collect::<Vec<f64>>()
    });
    let samples: Vec<f64> = parts.into_iter().flatten().collect();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let (mut m2, mut m4) = (0.0, 0.0);
    for &y in &samples {
        let d2 = (y - mean) * (y - mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    let variance_target = 0.5 * weights.iter().map(|w| w * w).sum::<f64>();
    Ok(PrimePhaseSummary {
        x,
        trials,
        mean,
        variance: m2,
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
        variance_target,
        variance_std_err: ((m4 - m2 * m2) / n).sqrt(),
        kurtosis_std_err: (24.0 / n).sqrt(),
        samples: keep_samples.then_some(samples),
    })
}

/// Exact excess kurtosis of Y at finite X: −(3/2) Σ p^{−2} / (Σ p^{−1})².
pub fn prime_phase_exact_excess_kurtosis(x: u64) -> f64 {
    let primes = primes_up_to(x);
    let s1: f64 = primes.iter().map(|&p| 1.0 / p as f64).sum();
    let s2: f64 = primes.iter().map(|&p| 1.0 / (p as f64 * p as f64)).sum();
    -1.5 * s2 / (s1 * s1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_two_is_a_single_cosine() {
        let s = prime_phase_sample(2, 50_000, 4, false).unwrap();
        assert!((s.variance_target - 0.25).abs() < 1e-15);
        assert!(s.mean.abs() < 4.0 * (0.25f64 / 5e4).sqrt());
        assert!((s.variance - 0.25).abs() < 4.0 * s.variance_std_err);
        // cos φ/√2 has excess kurtosis −3/2
        assert!((s.excess_kurtosis + 1.5).abs() < 0.05);
        assert!((prime_phase_exact_excess_kurtosis(2) + 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_small_x() {
        assert!(prime_phase_sample(1, 10, 0, false).is_err());
    }

    #[test]
    fn samples_kept_on_request() {
        let s = prime_phase_sample(30, 100, 1, true).unwrap();
        assert_eq!(s.samples.as_ref().map(Vec::len), Some(100));
    }
}
