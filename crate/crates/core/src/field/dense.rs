//! Dense univariate polynomials over a [`Field`], coefficients stored low
//! degree first with no trailing zeros. Only the operations needed for
//! irreducibility testing and root finding live here.

use super::Field;
use crate::error::{Error, Result};

pub type Dense<E> = Vec<E>;

pub fn trim<F: Field>(field: &F, mut a: Dense<F::Elem>) -> Dense<F::Elem> {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F::Elem> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let out = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, out)
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F::Elem> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let out = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, out)
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    // coefficient k is a dot product of a with reversed b
    let b_rev: Vec<F::Elem> = b.iter().rev().cloned().collect();
    let out = (0..n)
        .map(|k| {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let b_start = b.len() - 1 - (k - lo);
            field.dot(&a[lo..=hi], &b_rev[b_start..b_start + (hi - lo + 1)])
        })
        .collect();
    trim(field, out)
}

pub fn scale<F: Field>(field: &F, a: &[F::Elem], c: &F::Elem) -> Dense<F::Elem> {
    trim(field, a.iter().map(|x| field.mul(x, c)).collect())
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn div_rem<F: Field>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Dense<F::Elem>, Dense<F::Elem>)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let mut r: Dense<F::Elem> = a.to_vec();
    if r.len() <= db {
        return Ok((Vec::new(), trim(field, r)));
    }
    let mut quot = vec![field.zero(); r.len() - db];
    reduce_in_place(field, &mut r, b, |i, c| quot[i - db] = c)?;
    Ok((trim(field, quot), trim(field, r)))
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Dense<F::Elem>> {
    let mut r = a.to_vec();
    reduce_in_place(field, &mut r, b, |_, _| {})?;
    Ok(trim(field, r))
}

/// Long division of `r` by `b`, leaving the remainder in `r` and passing
/// each quotient coefficient (with the index of the cancelled term) to
/// `emit`.
fn reduce_in_place<F: Field>(
    field: &F,
    r: &mut Dense<F::Elem>,
    b: &[F::Elem],
    mut emit: impl FnMut(usize, F::Elem),
) -> Result<()> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    if r.len() <= db {
        return Ok(());
    }
    let monic = b[db] == field.one();
    let lead_inv = if monic { field.one() } else { field.inv(&b[db])? };
    for i in (db..r.len()).rev() {
        if field.is_zero(&r[i]) {
            continue;
        }
        let c = if monic { r[i].clone() } else { field.mul(&r[i], &lead_inv) };
        let window = &mut r[i - db..i];
        for (x, bj) in window.iter_mut().zip(b) {
            *x = field.sub(x, &field.mul(&c, bj));
        }
        emit(i, c);
    }
    r.truncate(db);
    Ok(())
}

pub fn monic<F: Field>(field: &F, a: &[F::Elem]) -> Result<Dense<F::Elem>> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lead) => Ok(scale(field, a, &field.inv(lead)?)),
    }
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Dense<F::Elem>> {
    let mut a = trim(field, a.to_vec());
    let mut b = trim(field, b.to_vec());
    while !b.is_empty() {
        let r = rem(field, &a, &b)?;
        a = b;
        b = r;
    }
    monic(field, &a)
}

pub fn mul_mod<F: Field>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    modulus: &[F::Elem],
) -> Result<Dense<F::Elem>> {
    rem(field, &mul(field, a, b), modulus)
}

/// `base^e mod modulus` by square-and-multiply.
pub fn pow_mod<F: Field>(
    field: &F,
    base: &[F::Elem],
    mut e: u128,
    modulus: &[F::Elem],
) -> Result<Dense<F::Elem>> {
    let mut acc = rem(field, &[field.one()], modulus)?;
    let mut b = rem(field, base, modulus)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(field, &acc, &b, modulus)?;
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(field, &b, &b, modulus)?;
        }
    }
    Ok(acc)
}

/// `(z + shift)^e mod modulus`. Multiplying by the linear base costs
/// `O(deg modulus)`, so this is about twice as fast as [`pow_mod`].
pub fn pow_linear_mod<F: Field>(
    field: &F,
    shift: &F::Elem,
    e: u128,
    modulus: &[F::Elem],
) -> Result<Dense<F::Elem>> {
    let dm = degree(modulus).ok_or(Error::DivisionByZero)?;
    let lead_inv = field.inv(&modulus[dm])?;
    let mut acc = rem(field, &[field.one()], modulus)?;
    for bit in (0..128 - e.leading_zeros()).rev() {
        acc = mul_mod(field, &acc, &acc, modulus)?;
        if (e >> bit) & 1 == 1 {
            // acc * (z + shift), then cancel the degree-dm term if any
            let mut next = Vec::with_capacity(acc.len() + 1);
            next.push(field.zero());
            next.extend(acc.iter().cloned());
            for (x, a) in next.iter_mut().zip(&acc) {
                *x = field.add(x, &field.mul(a, shift));
            }
            if next.len() > dm {
                let c = field.mul(&next[dm], &lead_inv);
                for (x, m) in next.iter_mut().zip(modulus) {
                    *x = field.sub(x, &field.mul(&c, m));
                }
                next.truncate(dm);
            }
            acc = trim(field, next);
        }
    }
    Ok(acc)
}

/// Horner evaluation.
pub fn eval<F: Field>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// `prod (z - r)` over the given roots.
pub fn from_roots<F: Field>(field: &F, roots: &[F::Elem]) -> Dense<F::Elem> {
    roots.iter().fold(vec![field.one()], |acc, r| {
        mul(field, &acc, &[field.neg(r), field.one()])
    })
}
