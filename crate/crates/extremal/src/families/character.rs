//! Real characters: the Kronecker symbol and fundamental discriminants.

/// Kronecker symbol (d|n).
pub fn kronecker_symbol(d: i64, n: u64) -> i8 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    if d % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let v = n.trailing_zeros();
    let mut b = n >> v;
    let mut k: i8 = 1;
    if v % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
        k = -k;
    }
    let mut a = d;
    loop {
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 && matches!(b % 8, 3 | 5) {
            k = -k;
        }
        // reciprocity; a & 3 is the residue mod 4 in two's complement
        if a & 3 == 3 && b & 3 == 3 {
            k = -k;
        }
        let r = a.unsigned_abs();
        a = (b % r) as i64;
        b = r;
    }
}

pub(crate) fn is_squarefree(mut m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// d ≡ 1 (mod 4) squarefree, or d = 4m with m ≡ 2, 3 (mod 4) squarefree.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Squarefree flags for 0..=limit.
pub(crate) fn squarefree_sieve(limit: usize) -> Vec<bool> {
    let mut flags = vec![true; limit + 1];
    flags[0] = false;
    let mut p = 2usize;
    while p * p <= limit {
        let sq = p * p;
        let mut m = sq;
        while m <= limit {
            flags[m] = false;
            m += sq;
        }
        p += 1;
    }
    flags
}

/// Table χ_d(n) for n ≤ len − 1 built from χ_d at primes and complete multiplicativity.
pub(crate) fn character_table(d: i64, spf: &[u32], len: usize) -> Vec<i8> {
    let mut chi = vec![0i8; len];
    if len > 1 {
        chi[1] = 1;
    }
    for n in 2..len {
        let p = spf[n] as usize;
        chi[n] = if p == n { kronecker_symbol(d, n as u64) } else { chi[p] * chi[n / p] };
    }
    chi
}
