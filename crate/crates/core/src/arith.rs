//! Elementary integer arithmetic: gcd, modular exponentiation and inverses,
//! primality, factorization, primitive roots, and small sieves.
//!
//! All routines are deterministic and exact; moduli in this crate are small
//! (well below `2^32`), so `u64` intermediates with `u128` products never
//! overflow.

use alloc::vec;
use alloc::vec::Vec;

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `base^exp mod m` by binary exponentiation. Requires `m > 0`.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m > 0);
    if m == 1 {
        return 0;
    }
    let mut result: u64 = 1;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = ((result as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    debug_assert!(m > 0);
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        let tmp_r = old_r - quotient * r;
        old_r = r;
        r = tmp_r;
        let tmp_s = old_s - quotient * s;
        old_s = s;
        s = tmp_s;
    }
    if old_r.unsigned_abs() != 1 {
        return None;
    }
    // Normalize sign of both the gcd and the coefficient.
    let mut inv = if old_r < 0 { -old_s } else { old_s };
    inv %= m as i128;
    if inv < 0 {
        inv += m as i128;
    }
    Some(inv as u64)
}

/// Deterministic primality test by trial division (moduli here are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Factorization as ordered `(prime, exponent)` pairs, ascending in the prime.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in [2u64, 3] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(p, e);
    }
    let mut d = 5u64;
    while d * d <= n {
        for p in [d, d + 2] {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            push(p, e);
        }
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Euler's totient from a factorization produced by [`factorize`].
pub fn euler_phi(factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Smallest positive primitive root modulo an odd prime `p`.
///
/// The choice of the *smallest* root makes every character enumeration in
/// this crate reproducible.
pub fn primitive_root(p: u64) -> u64 {
    debug_assert!(is_prime(p) && p > 2);
    let phi = p - 1;
    let prime_divisors: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    'outer: for g in 2..p {
        for &q in &prime_divisors {
            if mod_pow(g, phi / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root");
}

/// Discrete-logarithm table for an odd prime `p` with primitive root `g`:
/// `table[a] = k` with `g^k ≡ a (mod p)` for `1 <= a < p`; `table[0]` is a
/// sentinel (`u32::MAX`).
pub fn index_table(p: u64, g: u64) -> Vec<u32> {
    let mut table = vec![u32::MAX; p as usize];
    let mut pow = 1u64;
    for k in 0..(p - 1) {
        table[pow as usize] = k as u32;
        pow = pow * g % p;
    }
    table
}

/// Smallest-prime-factor sieve for `0..=n_max` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factor(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Divisor-count sieve: `d[n]` = number of divisors of `n`, for `0..=n_max`.
pub fn divisor_count_sieve(n_max: usize) -> Vec<u32> {
    let mut d = vec![0u32; n_max + 1];
    for i in 1..=n_max {
        let mut j = i;
        while j <= n_max {
            d[j] += 1;
            j += i;
        }
    }
    d
}
