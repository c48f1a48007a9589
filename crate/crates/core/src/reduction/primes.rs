/// Primes `<= n` by the plain sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// The first `count` primes `>= start`, sieving one segment at a time.
pub fn primes_from(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    // a segment long enough to hold roughly `count` primes near `start`
    let density = ((start.max(16) as f64).ln() * 1.2) as u64;
    let width = (count as u64 * density).clamp(1 << 10, 1 << 22);
    let mut lo = start.max(2);
    let mut base: Vec<u64> = Vec::new();
    let mut base_limit = 0;
    while out.len() < count {
        let hi = lo.saturating_add(width);
        let root = isqrt(hi) + 1;
        if root > base_limit {
            base_limit = root.max(base_limit * 2);
            base = primes_up_to(base_limit);
        }
        let mut composite = vec![false; (hi - lo) as usize];
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let first = (lo.div_ceil(p) * p).max(p * p);
            let mut j = first;
            while j < hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        for (offset, &c) in composite.iter().enumerate() {
            if !c {
                out.push(lo + offset as u64);
                if out.len() == count {
                    break;
                }
            }
        }
        lo = hi;
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `ceil(k * log2(d))` for `d >= 1`, exact when `d` is a power of two.
pub fn ceil_mul_log2(k: u64, d: u64) -> u64 {
    if d <= 1 || k == 0 {
        return 0;
    }
    if d.is_power_of_two() {
        return k * u64::from(d.trailing_zeros());
    }
    (k as f64 * (d as f64).log2()).ceil() as u64
}

/// Pool size `max(31 * ceil((t1 - 1) log2 d), 1)`.
pub fn pool_size(t1: usize, d: u64) -> usize {
    let k = t1.saturating_sub(1) as u64;
    (31 * ceil_mul_log2(k, d.max(1))).max(1) as usize
}

/// The first [`pool_size`] primes at or above `32 (t1 - 1)`.
pub fn prime_pool(t1: usize, d: u64) -> Vec<u64> {
    let threshold = 32 * t1.saturating_sub(1) as u64;
    primes_from(threshold, pool_size(t1, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::nt::is_prime;

    #[test]
    fn pool_examples() {
        assert_eq!(prime_pool(1, 1), vec![2]);
        assert_eq!(prime_pool(1, 1000), vec![2]);
        let pool = prime_pool(2, 2);
        assert_eq!(pool.len(), 31);
        assert_eq!(&pool[..3], &[37, 41, 43]);
        let pool = prime_pool(3, 4);
        assert_eq!(pool.len(), 124);
        assert_eq!(&pool[..2], &[67, 71]);
        // degree bound 1 gives log2 D = 0
        assert_eq!(prime_pool(5, 1), vec![131]);
    }

    #[test]
    fn pool_size_uses_ceiling() {
        // 19 * log2(30) = 93.23
        assert_eq!(pool_size(20, 30), 31 * 94);
        assert_eq!(pool_size(3, 8), 31 * 6);
    }

    #[test]
    fn segmented_sieve_matches_trial_division() {
        for (start, count) in [(0u64, 50usize), (2, 10), (1000, 300), (1 << 20, 5000), (999_983, 3)] {
            let got = primes_from(start, count);
            let mut expect = Vec::new();
            let mut x = start;
            while expect.len() < count {
                if is_prime(x as u128) {
                    expect.push(x);
                }
                x += 1;
            }
            assert_eq!(got, expect, "start {start}");
        }
    }
}
