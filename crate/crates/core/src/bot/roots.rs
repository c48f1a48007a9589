use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{dense, Field};

/// Retry cap per splitting step.
const MAX_SPLIT_ATTEMPTS: usize = 64;
/// Fields up to this size are searched exhaustively.
const ENUMERATION_LIMIT: u128 = 1 << 12;

/// Distinct roots of a polynomial that splits into distinct linear factors
/// over the field, by randomized equal-degree splitting. Uses a fixed
/// internal seed; the returned set does not depend on it.
pub fn find_roots<F: Field>(field: &F, poly: &[F::Elem]) -> Result<Vec<F::Elem>> {
    find_roots_with_rng(field, poly, &mut ChaCha8Rng::seed_from_u64(0x726f_6f74))
}

pub fn find_roots_with_rng<F: Field, R: Rng + ?Sized>(
    field: &F,
    poly: &[F::Elem],
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    let mut g = dense::monic(field, &dense::trim(field, poly.to_vec()))?;
    let deg = dense::degree(&g)
        .ok_or_else(|| Error::InvalidInput("every element is a root of the zero polynomial".into()))?;
    if deg == 0 {
        return Ok(Vec::new());
    }

    if field.size() <= ENUMERATION_LIMIT {
        let roots: Vec<F::Elem> = (0..field.size())
            .map(|i| field.element(i))
            .filter(|x| field.is_zero(&dense::eval(field, &g, x)))
            .collect();
        if roots.len() != deg {
            return Err(Error::RootFinding(format!(
                "degree {deg} but {} distinct roots",
                roots.len()
            )));
        }
        return Ok(roots);
    }

    let mut roots = Vec::with_capacity(deg);
    if field.is_zero(&g[0]) {
        roots.push(field.zero());
        g.remove(0);
        if field.is_zero(&g[0]) {
            return Err(Error::RootFinding("repeated root at zero".into()));
        }
    }
    if g.len() == 1 {
        return Ok(roots);
    }

    let size = field.size();
    let z = vec![field.zero(), field.one()];
    if size % 2 == 1 {
        // g | z^{Q-1} - 1 exactly when g is squarefree and splits with nonzero roots
        let w = dense::pow_linear_mod(field, &field.zero(), (size - 1) / 2, &g)?;
        let one = vec![field.one()];
        if dense::mul_mod(field, &w, &w, &g)? != one {
            return Err(Error::RootFinding("not squarefree or not split over the field".into()));
        }
        let first = dense::gcd(field, &g, &dense::sub(field, &w, &one))?;
        let mut stack = Vec::new();
        push_split(field, &g, first, &mut stack)?;
        while let Some(h) = stack.pop() {
            if h.len() == 2 {
                roots.push(field.neg(&h[0]));
                continue;
            }
            let d = split_odd(field, &h, rng)?;
            push_split(field, &h, d, &mut stack)?;
        }
    } else {
        if dense::pow_linear_mod(field, &field.zero(), size, &g)? != z {
            return Err(Error::RootFinding("not squarefree or not split over the field".into()));
        }
        let bits = size.trailing_zeros();
        let mut stack = vec![g];
        while let Some(h) = stack.pop() {
            if h.len() == 2 {
                roots.push(field.neg(&h[0]));
                continue;
            }
            let d = split_trace(field, &h, bits, rng)?;
            push_split(field, &h, d, &mut stack)?;
        }
    }
    Ok(roots)
}

/// Pushes `d` and `g / d` when `d` is a proper factor, else `g` again.
fn push_split<F: Field>(
    field: &F,
    g: &[F::Elem],
    d: Vec<F::Elem>,
    stack: &mut Vec<Vec<F::Elem>>,
) -> Result<()> {
    if d.len() > 1 && d.len() < g.len() {
        let (cofactor, _) = dense::div_rem(field, g, &d)?;
        stack.push(d);
        stack.push(cofactor);
    } else {
        stack.push(g.to_vec());
    }
    Ok(())
}

/// Proper factor `gcd(g, (z + r)^{(Q-1)/2} - 1)` for odd field size.
fn split_odd<F: Field, R: Rng + ?Sized>(field: &F, g: &[F::Elem], rng: &mut R) -> Result<Vec<F::Elem>> {
    let half = (field.size() - 1) / 2;
    let one = vec![field.one()];
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        let h = dense::pow_linear_mod(field, &field.random(rng), half, g)?;
        let d = dense::gcd(field, g, &dense::sub(field, &h, &one))?;
        if d.len() > 1 && d.len() < g.len() {
            return Ok(d);
        }
    }
    Err(Error::RootFinding(format!(
        "no split after {MAX_SPLIT_ATTEMPTS} attempts"
    )))
}

/// Proper factor `gcd(g, Tr(r z))` in characteristic 2, where
/// `Tr(y) = y + y^2 + ... + y^{2^{k-1}}` and `Q = 2^k`.
fn split_trace<F: Field, R: Rng + ?Sized>(
    field: &F,
    g: &[F::Elem],
    bits: u32,
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        let mut y = dense::rem(field, &[field.zero(), field.random_nonzero(rng)], g)?;
        let mut trace = y.clone();
        for _ in 1..bits {
            y = dense::mul_mod(field, &y, &y, g)?;
            trace = dense::add(field, &trace, &y);
        }
        let d = dense::gcd(field, g, &trace)?;
        if d.len() > 1 && d.len() < g.len() {
            return Ok(d);
        }
    }
    Err(Error::RootFinding(format!(
        "no split after {MAX_SPLIT_ATTEMPTS} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtensionField, PrimeField};
    use std::collections::BTreeSet;

    fn sorted(v: Vec<u64>) -> Vec<u64> {
        let mut v = v;
        v.sort_unstable();
        v
    }

    #[test]
    fn small_field_examples() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(sorted(find_roots(&f, &[2, 4, 1]).unwrap()), vec![1, 2]);
        assert_eq!(find_roots(&f, &[2, 1]).unwrap(), vec![5]);
        assert!(find_roots(&f, &[1]).unwrap().is_empty());
        // z^2 + 1 has no roots in F_7
        assert!(find_roots(&f, &[1, 0, 1]).is_err());
    }

    #[test]
    fn large_prime_field_splitting() {
        let f = PrimeField::new(30_000_000_001).unwrap();
        let roots: Vec<u64> = vec![1, 29, 123_456_789, 29_999_999_999, 0, 77, 5_000_000_000];
        let poly = dense::from_roots(&f, &roots);
        assert_eq!(sorted(find_roots(&f, &poly).unwrap()), sorted(roots));
        let doubled = dense::from_roots(&f, &[3, 3, 8]);
        assert!(find_roots(&f, &doubled).is_err());
        // z^2 - 7 where 7 is a non-residue has no roots
        let nonresidue = (2..100u64)
            .find(|&a| f.pow(&a, 15_000_000_000u128) != 1)
            .unwrap();
        assert!(find_roots(&f, &[f.neg(&nonresidue), 0, 1]).is_err());
    }

    #[test]
    fn characteristic_two_extension() {
        let f = ExtensionField::new(2, 16).unwrap();
        let roots: Vec<_> = [3u128, 77, 1000, 65535, 4242, 1].iter().map(|&i| f.element(i)).collect();
        let poly = dense::from_roots(&f, &roots);
        let found: BTreeSet<_> = find_roots(&f, &poly).unwrap().into_iter().collect();
        assert_eq!(found, roots.into_iter().collect());
    }

    #[test]
    fn odd_extension() {
        let f = ExtensionField::new(101, 3).unwrap();
        let roots: Vec<_> = [5u128, 10_000, 999_999, 31].iter().map(|&i| f.element(i)).collect();
        let poly = dense::from_roots(&f, &roots);
        let found: BTreeSet<_> = find_roots(&f, &poly).unwrap().into_iter().collect();
        assert_eq!(found, roots.into_iter().collect());
    }
}
