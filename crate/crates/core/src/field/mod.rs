//! Finite fields `F_q` and `F_{q^m}`.
//!
//! [`Field`] is the arithmetic surface every algorithm in the crate is
//! generic over. [`FiniteField`] adds the primitive element used to build
//! geometric evaluation sequences. Two contexts implement both:
//! [`PrimeField`] with plain `u64` residues, and [`ExtensionField`] with a
//! polynomial basis over a random irreducible modulus.

pub mod dense;
mod ext;
pub mod nt;
mod prime;

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::error::{Error, Result};

pub use ext::{find_irreducible, is_irreducible, ExtensionField, FieldElem};
pub use prime::{ModQ, PrimeField};

/// Largest supported characteristic. Keeps sums of two residues in a `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    /// The prime `q`.
    fn characteristic(&self) -> u64;
    /// Extension degree `m` over `F_q`.
    fn degree(&self) -> usize;
    /// Number of elements `Q = q^m`.
    fn size(&self) -> u128;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Embeds an integer (reduced mod `q`) into the field.
    fn from_base(&self, c: u64) -> Self::Elem;
    /// Projects onto `F_q`, or `None` if `a` lies outside the base field.
    fn to_base(&self, a: &Self::Elem) -> Option<u64>;
    /// Polynomial-basis coordinates, always `degree()` entries.
    fn to_coeffs(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coeffs(&self, coeffs: &[u64]) -> Result<Self::Elem>;

    /// Element number `index` in a fixed enumeration of the field
    /// (base-`q` digits of `index` as coordinates).
    fn element(&self, index: u128) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn arith(&self, op: ArithOp, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    /// Inner product `sum_i a_i b_i`.
    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

/// A field together with a generator of its multiplicative group.
pub trait FiniteField: Field {
    fn primitive(&self) -> &Self::Elem;

    /// Order of the multiplicative group, `Q - 1`.
    fn order(&self) -> u128 {
        self.size() - 1
    }
}

/// True when `a` generates the multiplicative group of a field whose order
/// `Q - 1` has the given distinct prime factors.
pub fn has_full_order<F: Field>(field: &F, a: &F::Elem, order_factors: &[u128]) -> bool {
    let order = field.size() - 1;
    if field.is_zero(a) || field.pow(a, order) != field.one() {
        return false;
    }
    order_factors
        .iter()
        .all(|&r| field.pow(a, order / r) != field.one())
}

/// Smallest element (in the field's enumeration order) of full
/// multiplicative order.
pub fn find_primitive<F: Field>(field: &F) -> Result<F::Elem> {
    let order = field.size() - 1;
    let factors = nt::prime_factors(order)?;
    (1..field.size())
        .map(|i| field.element(i))
        .find(|a| has_full_order(field, a, &factors))
        .ok_or_else(|| Error::InvalidInput("field has no primitive element".into()))
}

/// Checks a caller-supplied primitive element. If `Q - 1` cannot be
/// factored, only `omega^(Q-1) = 1` is verified.
pub(crate) fn check_primitive<F: Field>(field: &F, omega: &F::Elem) -> Result<()> {
    let order = field.size() - 1;
    let ok = match nt::prime_factors(order) {
        Ok(factors) => has_full_order(field, omega, &factors),
        Err(Error::FactorizationTimeout(_)) => {
            !field.is_zero(omega) && field.pow(omega, order) == field.one()
        }
        Err(e) => return Err(e),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{omega:?} is not a primitive element")))
    }
}
