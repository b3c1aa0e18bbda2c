//! Seeded Monte Carlo experiments over the Haar ensembles and the random
//! prime-phase model. Results are bit-identical for any worker count.

mod gaussian;
mod maxens;
mod primes;
mod seeding;
mod tail;

pub use gaussian::gaussian_sampling_max;
pub use maxens::{max_over_ensemble, MAX_DIRECT_TRIALS};
pub use primes::{prime_phase_exact_excess_kurtosis, prime_phase_sample, PrimePhaseSummary};
pub use seeding::{derive_seed, for_each_chunk, trial_rng, CHUNK};
pub use tail::{
    estimate_tail, predicted_log_p, Evaluator, ExperimentConfig, Statistic, TailEstimate, Threshold,
};
