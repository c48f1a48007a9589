use rand::Rng;

use super::{check_primitive, find_primitive, nt, Field, FiniteField, MAX_CHARACTERISTIC};
use crate::error::{Error, Result};

/// Below this bound products are reduced with a floating-point quotient
/// estimate instead of a 128-bit division.
const FAST_REDUCE_LIMIT: u64 = 1 << 50;

/// Arithmetic modulo a prime `q < 2^63`, without a distinguished generator.
#[derive(Debug, Clone)]
pub struct ModQ {
    q: u64,
    inv_q: f64,
}

impl ModQ {
    pub fn new(q: u64) -> Result<Self> {
        if q >= MAX_CHARACTERISTIC {
            return Err(Error::InvalidInput(format!(
                "characteristic {q} exceeds 2^63"
            )));
        }
        if !nt::is_prime(q as u128) {
            return Err(Error::NotPrime(q as u128));
        }
        Ok(ModQ {
            q,
            inv_q: 1.0 / q as f64,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.q < FAST_REDUCE_LIMIT {
            // quotient estimate is off by at most one for q < 2^50
            let quot = (a as f64 * b as f64 * self.inv_q) as u64;
            let r = a.wrapping_mul(b).wrapping_sub(quot.wrapping_mul(self.q)) as i64;
            if r < 0 {
                (r + self.q as i64) as u64
            } else if r >= self.q as i64 {
                (r - self.q as i64) as u64
            } else {
                r as u64
            }
        } else {
            ((a as u128 * b as u128) % self.q as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u128) -> u64 {
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (self.q as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (t0, t1) = (t1, t0 - k * t1);
        }
        Ok(t0.rem_euclid(self.q as i128) as u64)
    }

    /// `sum a_i b_i` with a single reduction per 128-bit accumulator flush.
    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        if self.q >= FAST_REDUCE_LIMIT {
            return a
                .iter()
                .zip(b)
                .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)));
        }
        // each product < 2^100, so 2^27 of them fit in a u128
        let mut acc = 0u128;
        for (chunk_a, chunk_b) in a.chunks(1 << 27).zip(b.chunks(1 << 27)) {
            for (&x, &y) in chunk_a.iter().zip(chunk_b) {
                acc += x as u128 * y as u128;
            }
            acc %= self.q as u128;
        }
        acc as u64
    }
}

impl Field for ModQ {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.q
    }
    fn degree(&self) -> usize {
        1
    }
    fn size(&self) -> u128 {
        self.q as u128
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.q
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ModQ::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ModQ::sub(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        ModQ::neg(self, *a)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ModQ::mul(self, *a, *b)
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        ModQ::inv(self, *a)
    }
    fn pow(&self, a: &u64, e: u128) -> u64 {
        ModQ::pow(self, *a, e)
    }
    fn from_base(&self, c: u64) -> u64 {
        c % self.q
    }
    fn to_base(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn to_coeffs(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_coeffs(&self, coeffs: &[u64]) -> Result<u64> {
        match coeffs {
            [c] if *c < self.q => Ok(*c),
            _ => Err(Error::InvalidInput(format!(
                "expected one residue below {}, got {coeffs:?}",
                self.q
            ))),
        }
    }
    fn element(&self, index: u128) -> u64 {
        (index % self.q as u128) as u64
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.q)
    }
    fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        ModQ::dot(self, a, b)
    }
}

/// The prime field `F_q` with a primitive element `omega`.
#[derive(Debug, Clone)]
pub struct PrimeField {
    base: ModQ,
    omega: u64,
}

impl PrimeField {
    /// Builds `F_q`, searching for the smallest primitive root.
    pub fn new(q: u64) -> Result<Self> {
        let base = ModQ::new(q)?;
        let omega = find_primitive(&base)?;
        Ok(PrimeField { base, omega })
    }

    /// Builds `F_q` around a caller-supplied primitive element.
    pub fn with_primitive(q: u64, omega: u64) -> Result<Self> {
        let base = ModQ::new(q)?;
        if omega >= q {
            return Err(Error::InvalidInput(format!("{omega} is not reduced mod {q}")));
        }
        check_primitive(&base, &omega)?;
        Ok(PrimeField { base, omega })
    }

    pub fn modq(&self) -> &ModQ {
        &self.base
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.base.q
    }
    fn degree(&self) -> usize {
        1
    }
    fn size(&self) -> u128 {
        self.base.q as u128
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.base.one()
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.base.add(*a, *b)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.base.sub(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        self.base.neg(*a)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.base.mul(*a, *b)
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        self.base.inv(*a)
    }
    fn pow(&self, a: &u64, e: u128) -> u64 {
        self.base.pow(*a, e)
    }
    fn from_base(&self, c: u64) -> u64 {
        c % self.base.q
    }
    fn to_base(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn to_coeffs(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_coeffs(&self, coeffs: &[u64]) -> Result<u64> {
        Field::from_coeffs(&self.base, coeffs)
    }
    fn element(&self, index: u128) -> u64 {
        self.base.element(index)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.base.random(rng)
    }
    fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        self.base.dot(a, b)
    }
}

impl FiniteField for PrimeField {
    fn primitive(&self) -> &u64 {
        &self.omega
    }
}
