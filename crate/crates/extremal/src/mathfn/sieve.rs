use serde::Serialize;

use crate::error::{Error, Result};

/// Largest table the sieve will allocate.
pub const SIEVE_MAX: u64 = 100_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct VonMangoldtTable {
    pub limit: u64,
    values: Vec<f64>,
    pub primes: Vec<u64>,
}

impl VonMangoldtTable {
    /// Λ(n); zero outside 1..=limit.
    pub fn lambda(&self, n: u64) -> f64 {
        self.values.get(n as usize).copied().unwrap_or(0.0)
    }

    /// Chebyshev ψ(x) = Σ_{n≤x} Λ(n).
    pub fn psi(&self, x: u64) -> f64 {
        let end = (x.min(self.limit) as usize) + 1;
        self.values[..end].iter().sum()
    }

    /// Prime powers p^k ≤ x with their Λ value, ascending.
    pub fn prime_powers(&self, x: u64) -> impl Iterator<Item = (u64, f64)> + '_ {
        let end = x.min(self.limit);
        (2..=end).filter_map(move |n| {
            let v = self.values[n as usize];
            (v != 0.0).then_some((n, v))
        })
    }
}

/// Table of Λ(n) for n ≤ limit.
pub fn sieve_von_mangoldt(limit: u64) -> Result<VonMangoldtTable> {
    if limit == 0 {
        return Err(Error::Domain("sieve limit must be at least 1".into()));
    }
    if limit > SIEVE_MAX {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds the table cap {SIEVE_MAX}"
        )));
    }
    let primes = primes_up_to(limit);
    let mut values = vec![0.0; limit as usize + 1];
    for &p in &primes {
        let lp = (p as f64).ln();
        let mut q = p;
        loop {
            values[q as usize] = lp;
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }
    Ok(VonMangoldtTable { limit, values, primes })
}

/// All primes ≤ n by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::with_capacity(estimate_prime_count(n));
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn estimate_prime_count(n: usize) -> usize {
    let x = n as f64;
    if x < 17.0 {
        8
    } else {
        (1.26 * x / x.ln()) as usize
    }
}

/// Smallest-prime-factor table; `spf[n]` is 0 for n < 2.
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= n {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}
