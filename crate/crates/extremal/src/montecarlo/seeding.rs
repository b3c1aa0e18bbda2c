use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Trials per parallel work unit. Fixed, so chunk boundaries never depend
/// on the worker count.
pub const CHUNK: u64 = 4096;

/// Generator for trial `trial` under `root`: one ChaCha stream per trial.
pub fn trial_rng(root: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root);
    rng.set_stream(trial);
    rng
}

/// SplitMix64 mixing of (root, index), for deriving independent root seeds.
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x632B_E59B_D9B4_E019);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `work` over trial ranges [start, end) in parallel and returns the
/// per-chunk results in trial order.
pub fn for_each_chunk<T, F>(trials: u64, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    let chunks = trials.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            work(start, (start + CHUNK).min(trials))
        })
        .collect()
}
