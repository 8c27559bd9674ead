//! Small exact integer helpers: divisors, divisor functions, primality.

use num_integer::Integer;

/// Divisors of `n` in ascending order. Empty for `n == 0`.
pub fn divisors(n: u32) -> Vec<u32> {
    if n == 0 {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Number of divisors, τ(n).
pub fn tau(n: u32) -> u64 {
    divisors(n).len() as u64
}

/// Sum of divisors, σ(n).
pub fn sigma(n: u32) -> u64 {
    divisors(n).iter().map(|&d| d as u64).sum()
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Smallest prime factor of `n >= 2`; returns `n` itself for primes.
pub fn smallest_prime_factor(n: u32) -> u32 {
    assert!(n >= 2, "smallest_prime_factor needs n >= 2");
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        out.push(p);
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    out
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}
