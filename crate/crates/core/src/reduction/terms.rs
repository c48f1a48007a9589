use crate::error::Result;
use crate::field::Field;
use crate::poly::{MultiPoly, UniPoly};

/// Exponents of a univariate polynomial sorted by residue mod `p`.
struct ResidueIndex<'a, E> {
    entries: Vec<(u64, u64, &'a E)>,
}

impl<'a, E> ResidueIndex<'a, E> {
    fn new(poly: &'a UniPoly<E>, p: u64) -> Self
    where
        E: Clone,
    {
        let mut entries: Vec<_> = poly.terms().iter().map(|(c, e)| (e % p, *e, c)).collect();
        entries.sort_by_key(|&(r, e, _)| (r, e));
        ResidueIndex { entries }
    }

    /// The exponent and coefficient of the only term in residue class `r`.
    fn unique(&self, r: u64) -> Option<(u64, &'a E)> {
        let lo = self.entries.partition_point(|&(x, _, _)| x < r);
        match self.entries.get(lo..lo + 2).or_else(|| self.entries.get(lo..lo + 1)) {
            Some([(x, e, c)]) if *x == r => Some((*e, *c)),
            Some([(x, e, c), (y, _, _)]) if *x == r && *y != r => Some((*e, *c)),
            _ => None,
        }
    }
}

/// Recovers the terms of `f` that survive reduction modulo `x^p - 1`.
///
/// `f_mod = f_s mod (x^p - 1)` where `f_s = f(x^s)`, and `g[k]` is
/// `f(x^{s + p e_k})`. A term `a x^d` of `f_mod` yields the monomial
/// `a x^e` when `d` picks out exactly one exponent `u` of `f_s` and one
/// exponent `b_k` of every `g[k]`, all with coefficient `a`, and
/// `e_k = (b_k - u) / p` is a nonnegative integer vector with
/// `sum e_k s_k = u` and `sum e_k <= degree`. Terms failing any check are
/// skipped.
pub fn ts_terms<F: Field>(
    field: &F,
    f_mod: &UniPoly<F::Elem>,
    f_s: &UniPoly<F::Elem>,
    g: &[UniPoly<F::Elem>],
    p: u64,
    s: &[u64],
    degree: u64,
) -> Result<MultiPoly<F::Elem>> {
    let n = s.len();
    let fs_index = ResidueIndex::new(f_s, p);
    let g_index: Vec<_> = g.iter().map(|gk| ResidueIndex::new(gk, p)).collect();
    let mut out = Vec::new();
    'terms: for (a, d) in f_mod.terms() {
        let Some((u, c)) = fs_index.unique(*d) else { continue };
        if c != a {
            continue;
        }
        let mut exps = Vec::with_capacity(n);
        for index in &g_index {
            let Some((b, c)) = index.unique(*d) else { continue 'terms };
            if c != a || b < u || (b - u) % p != 0 {
                continue 'terms;
            }
            exps.push((b - u) / p);
        }
        let image = exps
            .iter()
            .zip(s)
            .try_fold(0u128, |acc, (&e, &sk)| acc.checked_add(e as u128 * sk as u128));
        let total = exps.iter().try_fold(0u64, |acc, &e| acc.checked_add(e));
        if image == Some(u as u128) && total.is_some_and(|t| t <= degree) {
            out.push((a.clone(), exps));
        }
    }
    MultiPoly::from_terms(field, n, out)
}

/// Number of terms of `f` whose exponent `sum e_k s_k mod p` is shared
/// with another term.
pub fn collision_count<E: Clone>(f: &MultiPoly<E>, p: u64, s: &[u64]) -> usize {
    let mut residues: Vec<u64> = f.terms().iter().map(|t| residue(&t.exps, s, p)).collect();
    residues.sort_unstable();
    let mut count = 0;
    let mut i = 0;
    while i < residues.len() {
        let j = residues[i..].partition_point(|&r| r == residues[i]) + i;
        if j - i > 1 {
            count += j - i;
        }
        i = j;
    }
    count
}

/// `sum e_k s_k mod p`.
pub fn residue(exps: &[u64], s: &[u64], p: u64) -> u64 {
    let p = p as u128;
    exps.iter()
        .zip(s)
        .fold(0u128, |acc, (&e, &sk)| (acc + (e as u128 % p) * (sk as u128 % p)) % p) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn two_term_example() {
        let f = f5();
        let poly = MultiPoly::from_terms(&f, 2, [(2, vec![1, 0]), (3, vec![0, 1])]).unwrap();
        let s = [1, 2];
        let f_s = poly.kronecker_sub(&f, &s).unwrap();
        assert_eq!(f_s, UniPoly::from_terms(&f, [(2, 1), (3, 2)]));
        let f_mod = f_s.mod_cyclic(&f, 5);
        let g = poly.poly_subs(&f, &s, 5).unwrap();
        assert_eq!(g[0], UniPoly::from_terms(&f, [(2, 6), (3, 2)]));
        assert_eq!(g[1], UniPoly::from_terms(&f, [(2, 1), (3, 7)]));
        assert_eq!(ts_terms(&f, &f_mod, &f_s, &g, 5, &s, 1).unwrap(), poly);
        // degree bound below the true degree rejects every term
        assert!(ts_terms(&f, &f_mod, &f_s, &g, 5, &s, 0).unwrap().is_zero());
    }

    #[test]
    fn single_term_always_recovered() {
        let f = PrimeField::new(101).unwrap();
        let poly = MultiPoly::from_terms(&f, 3, [(17, vec![2, 0, 3])]).unwrap();
        for p in [2u64, 3, 5, 7] {
            for s in [[0u64, 0, 0], [1, 1, 1], [p - 1, 0, 1]] {
                let f_s = poly.kronecker_sub(&f, &s).unwrap();
                let g = poly.poly_subs(&f, &s, p).unwrap();
                let h = ts_terms(&f, &f_s.mod_cyclic(&f, p), &f_s, &g, p, &s, 5).unwrap();
                assert_eq!(h, poly, "p={p} s={s:?}");
            }
        }
    }

    #[test]
    fn colliding_class_is_skipped() {
        let f = f5();
        // x1^3 and x2 map to 9 and 4, the same class mod 5
        let poly = MultiPoly::from_terms(&f, 2, [(1, vec![3, 0]), (2, vec![0, 1])]).unwrap();
        let s = [3, 4];
        let f_s = poly.kronecker_sub(&f, &s).unwrap();
        let f_mod = f_s.mod_cyclic(&f, 5);
        assert_eq!(f_mod, UniPoly::from_terms(&f, [(3, 4)]));
        let g = poly.poly_subs(&f, &s, 5).unwrap();
        assert_eq!(collision_count(&poly, 5, &s), 2);
        assert!(ts_terms(&f, &f_mod, &f_s, &g, 5, &s, 4).unwrap().is_zero());
    }

    #[test]
    fn residue_class_with_two_exponents_is_skipped() {
        let f = PrimeField::new(11).unwrap();
        let f_s = UniPoly::from_terms(&f, [(3, 1), (4, 6)]);
        let f_mod = UniPoly::from_terms(&f, [(7, 1)]);
        let g = vec![f_s.clone()];
        assert!(ts_terms(&f, &f_mod, &f_s, &g, 5, &[1], 10).unwrap().is_zero());
    }

    #[test]
    fn collision_count_examples() {
        let f = f5();
        let sum = MultiPoly::from_terms(&f, 2, [(1, vec![1, 0]), (1, vec![0, 1])]).unwrap();
        assert_eq!(collision_count(&sum, 5, &[1, 1]), 2);
        let single = MultiPoly::from_terms(&f, 2, [(1, vec![3, 4])]).unwrap();
        assert_eq!(collision_count(&single, 5, &[1, 1]), 0);
        let two = MultiPoly::from_terms(&f, 2, [(2, vec![1, 0]), (3, vec![0, 1])]).unwrap();
        assert_eq!(collision_count(&two, 5, &[1, 2]), 0);
        let three = MultiPoly::from_terms(&f, 1, [(1, vec![0]), (1, vec![5]), (1, vec![1])]).unwrap();
        assert_eq!(collision_count(&three, 5, &[1]), 2);
    }
}
