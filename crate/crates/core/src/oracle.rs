//! Black-box evaluation oracles.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::MultiPoly;

/// An evaluation oracle. Implementations must be deterministic and count
/// every call to [`BlackBox::eval`] exactly once; the counter is atomic so
/// oracles can be queried from several threads.
pub trait BlackBox<E>: Sync {
    fn arity(&self) -> usize;
    fn eval(&self, point: &[E]) -> Result<E>;
    /// Number of evaluations performed so far.
    fn queries(&self) -> u64;
}

/// Oracle backed by a hidden polynomial. The polynomial is not reachable
/// through this type; callers only see evaluations.
pub struct PolyOracle<F: Field> {
    field: F,
    poly: MultiPoly<F::Elem>,
    count: AtomicU64,
}

impl<F: Field> PolyOracle<F> {
    pub fn new(field: F, poly: MultiPoly<F::Elem>) -> Self {
        PolyOracle {
            field,
            poly,
            count: AtomicU64::new(0),
        }
    }
}

impl<F: Field> BlackBox<F::Elem> for PolyOracle<F> {
    fn arity(&self) -> usize {
        self.poly.arity()
    }

    fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.poly.eval(&self.field, point)
    }

    fn queries(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

/// Oracle wrapping an arbitrary evaluation function.
pub struct FnOracle<Func> {
    arity: usize,
    func: Func,
    count: AtomicU64,
}

impl<Func> FnOracle<Func> {
    pub fn new(arity: usize, func: Func) -> Self {
        FnOracle {
            arity,
            func,
            count: AtomicU64::new(0),
        }
    }
}

impl<E, Func> BlackBox<E> for FnOracle<Func>
where
    Func: Fn(&[E]) -> Result<E> + Sync,
{
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, point: &[E]) -> Result<E> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        self.count.fetch_add(1, Ordering::Relaxed);
        (self.func)(point)
    }

    fn queries(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

/// Univariate oracle `theta -> B(theta^{s_1}, ..., theta^{s_n})`.
pub struct SubstitutedOracle<'a, F: Field, B: ?Sized> {
    field: &'a F,
    inner: &'a B,
    s: Vec<u64>,
    count: AtomicU64,
}

/// Turns an `n`-ary oracle into a univariate one through the substitution
/// `x_k = x^{s_k}`. Each query costs exactly one query of `inner`.
pub fn make_univariate_oracle<'a, F, B>(field: &'a F, inner: &'a B, s: Vec<u64>) -> Result<SubstitutedOracle<'a, F, B>>
where
    F: Field,
    B: BlackBox<F::Elem> + ?Sized,
{
    if s.len() != inner.arity() {
        return Err(Error::ArityMismatch {
            expected: inner.arity(),
            got: s.len(),
        });
    }
    Ok(SubstitutedOracle {
        field,
        inner,
        s,
        count: AtomicU64::new(0),
    })
}

impl<F, B> BlackBox<F::Elem> for SubstitutedOracle<'_, F, B>
where
    F: Field,
    B: BlackBox<F::Elem> + ?Sized,
{
    fn arity(&self) -> usize {
        1
    }

    fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let [theta] = point else {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: point.len(),
            });
        };
        self.count.fetch_add(1, Ordering::Relaxed);
        let lifted: Vec<F::Elem> = self
            .s
            .iter()
            .map(|&e| self.field.pow(theta, e as u128))
            .collect();
        self.inner.eval(&lifted)
    }

    fn queries(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn sample() -> (PrimeField, MultiPoly<u64>) {
        let f = PrimeField::new(7).unwrap();
        let g = MultiPoly::from_terms(&f, 2, [(1, vec![1, 1]), (1, vec![2, 0])]).unwrap();
        (f, g)
    }

    #[test]
    fn substituted_oracle_matches_kronecker_image() {
        let (f, g) = sample();
        let oracle = PolyOracle::new(f.clone(), g.clone());
        let uni = make_univariate_oracle(&f, &oracle, vec![1, 2]).unwrap();
        // x^3 + x^2 at 2 is 12 = 5 mod 7
        assert_eq!(uni.eval(&[2]).unwrap(), 5);
        assert_eq!(g.kronecker_sub(&f, &[1, 2]).unwrap().eval(&f, &2), 5);
        assert_eq!(oracle.queries(), 1);
    }

    #[test]
    fn zero_substitution_is_constant() {
        let (f, g) = sample();
        let oracle = PolyOracle::new(f.clone(), g.clone());
        let uni = make_univariate_oracle(&f, &oracle, vec![0, 0]).unwrap();
        let at_ones = g.eval(&f, &[1, 1]).unwrap();
        for theta in 0..7 {
            assert_eq!(uni.eval(&[theta]).unwrap(), at_ones);
        }
    }

    #[test]
    fn oracle_is_deterministic_and_counts() {
        let (f, g) = sample();
        let oracle = PolyOracle::new(f.clone(), g);
        let uni = make_univariate_oracle(&f, &oracle, vec![3, 1]).unwrap();
        let a = uni.eval(&[4]).unwrap();
        let b = uni.eval(&[4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(uni.queries(), 2);
        assert_eq!(oracle.queries(), 2);
        assert!(uni.eval(&[1, 2]).is_err());
        assert!(make_univariate_oracle(&f, &oracle, vec![1]).is_err());
    }

    #[test]
    fn fn_oracle_checks_arity() {
        let f = PrimeField::new(11).unwrap();
        let o = FnOracle::new(2, |p: &[u64]| Ok(f.add(&p[0], &p[1])));
        assert_eq!(o.eval(&[5, 9]).unwrap(), 3);
        assert!(o.eval(&[1]).is_err());
        assert_eq!(o.queries(), 1);
    }
}
