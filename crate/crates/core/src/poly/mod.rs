//! Sparse multivariate and univariate polynomials, evaluation, and the
//! randomized Kronecker substitution maps.

pub mod text;

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse univariate polynomial; exponents strictly increasing, no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<E> {
    terms: Vec<(E, u64)>,
}

impl<E: Clone> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { terms: Vec::new() }
    }

    /// Collects arbitrary `(coeff, exp)` pairs: like exponents are summed
    /// and zero results dropped.
    pub fn from_terms<F>(field: &F, terms: impl IntoIterator<Item = (E, u64)>) -> Self
    where
        F: Field<Elem = E>,
    {
        let mut raw: Vec<(E, u64)> = terms.into_iter().collect();
        raw.sort_by_key(|(_, e)| *e);
        let mut out: Vec<(E, u64)> = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            match out.last_mut() {
                Some((acc, last)) if *last == e => *acc = field.add(acc, &c),
                _ => out.push((c, e)),
            }
        }
        out.retain(|(c, _)| !field.is_zero(c));
        UniPoly { terms: out }
    }

    pub fn terms(&self) -> &[(E, u64)] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|(_, e)| *e)
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.terms.iter().fold(field.zero(), |acc, (c, e)| {
            field.add(&acc, &field.mul(c, &field.pow(x, *e as u128)))
        })
    }

    fn merge<F: Field<Elem = E>>(&self, field: &F, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &E| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.1.cmp(&y.1),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((rhs(&b[j].0), b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&a[i].0, &b[j].0)
                    } else {
                        field.add(&a[i].0, &b[j].0)
                    };
                    if !field.is_zero(&c) {
                        out.push((c, a[i].1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        UniPoly { terms: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.merge(field, other, false)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.merge(field, other, true)
    }

    /// Reduction modulo `x^p - 1`: every exponent taken mod `p`.
    pub fn mod_cyclic<F: Field<Elem = E>>(&self, field: &F, p: u64) -> Self {
        assert!(p >= 1, "cyclic modulus must be positive");
        UniPoly::from_terms(field, self.terms.iter().map(|(c, e)| (c.clone(), e % p)))
    }
}

/// One term `coeff * x_1^{exps[0]} ... x_n^{exps[n-1]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<E> {
    pub coeff: E,
    pub exps: Vec<u64>,
}

impl<E> Term<E> {
    pub fn total_degree(&self) -> u64 {
        self.exps.iter().sum()
    }
}

/// Sparse multivariate polynomial in `n` variables, terms sorted
/// lexicographically by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<E> {
    n: usize,
    terms: Vec<Term<E>>,
}

impl<E: Clone> MultiPoly<E> {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: Vec::new() }
    }

    pub fn from_terms<F>(field: &F, n: usize, terms: impl IntoIterator<Item = (E, Vec<u64>)>) -> Result<Self>
    where
        F: Field<Elem = E>,
    {
        let mut raw = Vec::new();
        for (coeff, exps) in terms {
            if exps.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: exps.len(),
                });
            }
            raw.push(Term { coeff, exps });
        }
        raw.sort_by(|a, b| a.exps.cmp(&b.exps));
        let mut out: Vec<Term<E>> = Vec::with_capacity(raw.len());
        for t in raw {
            match out.last_mut() {
                Some(last) if last.exps == t.exps => last.coeff = field.add(&last.coeff, &t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !field.is_zero(&t.coeff));
        Ok(MultiPoly { n, terms: out })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(Term::total_degree).max().unwrap_or(0)
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            })
        }
    }

    fn merge<F: Field<Elem = E>>(&self, field: &F, other: &Self, negate: bool) -> Result<Self> {
        self.check_arity(other)?;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.exps.cmp(&y.exps),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let coeff = if negate { field.neg(&b[j].coeff) } else { b[j].coeff.clone() };
                    out.push(Term {
                        coeff,
                        exps: b[j].exps.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = if negate {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !field.is_zero(&coeff) {
                        out.push(Term {
                            coeff,
                            exps: a[i].exps.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(MultiPoly { n: self.n, terms: out })
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.merge(field, other, false)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.merge(field, other, true)
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> Result<E> {
        if point.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        Ok(self.terms.iter().fold(field.zero(), |acc, t| {
            let monomial = t
                .exps
                .iter()
                .zip(point)
                .filter(|(&e, _)| e > 0)
                .fold(t.coeff.clone(), |m, (&e, x)| field.mul(&m, &field.pow(x, e as u128)));
            field.add(&acc, &monomial)
        }))
    }

    /// `f(x^{s_1}, ..., x^{s_n})`, colliding terms summed.
    pub fn kronecker_sub<F: Field<Elem = E>>(&self, field: &F, s: &[u64]) -> Result<UniPoly<E>> {
        if s.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: s.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.coeff.clone(), substituted_degree(&t.exps, s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::from_terms(field, terms))
    }

    /// The images `g(x^{s + p I_k})` for `k = 1..n`, built in one pass
    /// over the terms.
    pub fn poly_subs<F: Field<Elem = E>>(&self, field: &F, s: &[u64], p: u64) -> Result<Vec<UniPoly<E>>> {
        if s.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: s.len(),
            });
        }
        let mut images: Vec<Vec<(E, u64)>> = vec![Vec::with_capacity(self.len()); self.n];
        for t in &self.terms {
            let d = substituted_degree(&t.exps, s)?;
            for (k, &e) in t.exps.iter().enumerate() {
                let shifted = e
                    .checked_mul(p)
                    .and_then(|x| x.checked_add(d))
                    .ok_or(Error::Overflow("shifting a substituted exponent"))?;
                images[k].push((t.coeff.clone(), shifted));
            }
        }
        Ok(images
            .into_iter()
            .map(|terms| UniPoly::from_terms(field, terms))
            .collect())
    }
}

/// `sum_k e_k s_k` with overflow checking.
pub fn substituted_degree(exps: &[u64], s: &[u64]) -> Result<u64> {
    exps.iter().zip(s).try_fold(0u64, |acc, (&e, &sk)| {
        e.checked_mul(sk)
            .and_then(|x| x.checked_add(acc))
            .ok_or(Error::Overflow("substituting exponents"))
    })
}

/// Number of monomials of total degree `<= d` in `n` variables,
/// `C(n + d, n)`, saturating at `u128::MAX`.
pub fn monomial_count(n: usize, d: u64) -> u128 {
    let k = (n as u128).min(d as u128);
    let total = n as u128 + d as u128;
    let mut acc = 1u128;
    for i in 0..k {
        // acc * (total - i) is divisible by (i + 1)
        match acc.checked_mul(total - i) {
            Some(x) => acc = x / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Uniform exponent vector of total degree `<= d`: the gaps between `n`
/// bars placed among `n + d` slots (stars and bars).
fn random_exponents<R: Rng + ?Sized>(n: usize, d: u64, rng: &mut R) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let slots = n + d as usize;
    let mut bars = index::sample(rng, slots, n).into_vec();
    bars.sort_unstable();
    let mut prev = 0usize;
    bars.iter()
        .map(|&b| {
            let gap = (b - prev) as u64;
            prev = b + 1;
            gap
        })
        .collect()
}

/// Random polynomial with exactly `t` distinct monomials of total degree
/// `<= d` (uniform over such monomials) and uniform nonzero coefficients
/// from the base field.
pub fn random_poly<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    t: usize,
    d: u64,
    rng: &mut R,
) -> Result<MultiPoly<F::Elem>> {
    if (t as u128) > monomial_count(n, d) {
        return Err(Error::InvalidInput(format!(
            "cannot place {t} distinct monomials of degree <= {d} in {n} variables"
        )));
    }
    let q = field.characteristic();
    let mut seen = HashSet::with_capacity(t);
    let mut terms = Vec::with_capacity(t);
    while terms.len() < t {
        let exps = random_exponents(n, d, rng);
        if seen.insert(exps.clone()) {
            terms.push((field.from_base(rng.gen_range(1..q)), exps));
        }
    }
    MultiPoly::from_terms(field, n, terms)
}
