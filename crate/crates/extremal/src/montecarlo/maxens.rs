use super::seeding::{for_each_chunk, trial_rng};
use super::tail::{Evaluator, Statistic};
use crate::ensembles::Kind;
use crate::error::{domain, Error, Result};

/// Largest number of matrices simulated directly.
pub const MAX_DIRECT_TRIALS: u64 = 10_000_000;

/// log of the maximum of the statistic over M independent matrices.
/// Trial i always uses stream i, so the result is monotone in M.
pub fn max_over_ensemble(kind: Kind, n: usize, m: u64, statistic: Statistic, root: u64) -> Result<f64> {
    if m == 0 {
        return domain("M must be at least 1");
    }
    if m > MAX_DIRECT_TRIALS {
        return Err(Error::Resource(format!(
            "M = {m} exceeds the direct-simulation cap {MAX_DIRECT_TRIALS}; use the tail-probability route"
        )));
    }
    if n == 0 || (kind.is_real() && n % 2 != 0) {
        return domain(format!("invalid dimension {n} for {kind}"));
    }
    if statistic == Statistic::CharpolyAtOne && !kind.is_real() {
        return domain("CharpolyAtOne needs a symplectic or orthogonal ensemble");
    }
    let parts = for_each_chunk(m, |start, end| {
        let mut eval = Evaluator::new(kind, n, statistic);
        (start..end)
            .map(|i| eval.sample(&mut trial_rng(root, i)))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    Ok(parts.into_iter().fold(f64::NEG_INFINITY, f64::max))
}
