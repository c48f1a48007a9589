//! Integer number theory on `u128`: modular multiplication, Miller-Rabin,
//! and factorization by trial division followed by Pollard rho.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const RHO_ITERATION_BUDGET: u64 = 1 << 24;

#[inline]
fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

/// `a * b mod m` for operands already reduced below `m`.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    let (mut a, mut b) = (a % m, b);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn miller_rabin_round(n: u128, d: u128, r: u32, a: u128) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..r {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Miller-Rabin primality test. Deterministic below 3.3e24 (first thirteen
/// prime bases); above that, forty additional random bases bound the error
/// by 2^-80.
pub fn is_prime(n: u128) -> bool {
    const BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    if !BASES.iter().all(|&a| miller_rabin_round(n, d, r, a)) {
        return false;
    }
    if n < 3_317_044_064_679_887_385_961_981 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64 ^ (n >> 64) as u64);
    (0..40).all(|_| {
        let a = rng.gen_range(2..n - 1);
        miller_rabin_round(n, d, r, a)
    })
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
/// composite `n`, or `None` once `budget` iterations are spent.
fn pollard_rho(n: u128, budget: &mut u64) -> Option<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 ^ n as u64);
    loop {
        let c = rng.gen_range(1..n);
        let mut y = rng.gen_range(0..n);
        let step = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut g, mut r, mut q) = (1u128, 1u64, 1u128);
        let (mut x, mut ys) = (y, y);
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
            *budget = budget.checked_sub(r)?;
        }
        if g == n {
            // batch overshot; step back one at a time
            loop {
                ys = step(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u128) -> Result<Vec<u128>> {
    let original = n;
    let mut factors = Vec::new();
    if n < 2 {
        return Ok(factors);
    }
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_LIMIT && (p as u128) * (p as u128) <= n {
        if n.is_multiple_of(p as u128) {
            factors.push(p as u128);
            while n.is_multiple_of(p as u128) {
                n /= p as u128;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut budget = RHO_ITERATION_BUDGET;
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            factors.push(m);
            continue;
        }
        let d = pollard_rho(m, &mut budget).ok_or(Error::FactorizationTimeout(original))?;
        stack.push(d);
        stack.push(m / d);
    }
    factors.sort_unstable();
    factors.dedup();
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_match_sieve() {
        let limit = 2000usize;
        let mut composite = vec![false; limit];
        for i in 2..limit {
            if !composite[i] {
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
            assert_eq!(is_prime(i as u128), !composite[i], "{i}");
        }
    }

    #[test]
    fn known_large_values() {
        assert!(is_prime(30_000_000_001));
        assert!(is_prime((1u128 << 61) - 1));
        assert!(is_prime((1u128 << 89) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime(((1u128 << 61) - 1) * ((1u128 << 31) - 1)));
    }

    #[test]
    fn factors_of_default_order() {
        assert_eq!(prime_factors(30_000_000_000).unwrap(), vec![2, 3, 5]);
    }

    #[test]
    fn factors_needing_rho() {
        let p = 1_000_003u128;
        let q = 998_244_353u128;
        assert_eq!(prime_factors(p * q * 4).unwrap(), vec![2, p, q]);
        let big = ((1u128 << 61) - 1) * 1_000_000_007;
        assert_eq!(
            prime_factors(big).unwrap(),
            vec![1_000_000_007, (1u128 << 61) - 1]
        );
    }

    #[test]
    fn mul_mod_wide_modulus() {
        let m = (1u128 << 100) + 277;
        let a = m - 1;
        assert_eq!(mul_mod(a, a, m), 1);
        assert_eq!(pow_mod(3, 0, m), 1);
    }
}
