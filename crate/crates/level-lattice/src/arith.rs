//! Small exact-integer number theory shared across the workspace.
//!
//! Everything here is trial-division desk scale: inputs stay far below 2^32,
//! so no clever factoring is warranted.

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
///
/// `factor(1)` is the empty list. Panics on `n = 0`.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor(0) is undefined");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Deterministic primality by trial division (desk scale).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// All divisors of `n`, sorted increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let snapshot = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(snapshot.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n) {
        out = out / p * (p - 1);
    }
    out
}

/// The multiplicative index function ψ(n) = n · ∏_{ℓ | n} (1 + 1/ℓ).
pub fn psi_index(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n) {
        out = out / p * (p + 1);
    }
    out
}

/// `base^exp` with overflow checks (panics on overflow; desk-scale inputs).
pub fn pow_u64(base: u64, exp: u32) -> u64 {
    let mut out = 1u64;
    for _ in 0..exp {
        out = out.checked_mul(base).expect("pow_u64 overflow");
    }
    out
}

/// If `n = p^e` for the given prime `p`, returns `Some(e)` (with `e = 0` for
/// `n = 1`); otherwise `None`.
pub fn p_power_exponent(n: u64, p: u64) -> Option<u32> {
    let mut n = n;
    let mut e = 0u32;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}
