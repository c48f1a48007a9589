use crate::field::Field;

/// Minimal linear recurrence of `seq` via Berlekamp-Massey.
///
/// Returns the monic annihilating polynomial
/// `zeta(z) = z^L + zeta_{L-1} z^{L-1} + ... + zeta_0`, low degree first,
/// with `sum_k zeta_k a_{j+k} = 0` for every `j` in range. A sequence of
/// zeros yields `zeta = 1`.
pub fn berlekamp_massey<F: Field>(field: &F, seq: &[F::Elem]) -> Vec<F::Elem> {
    // connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L
    let mut c = vec![field.one()];
    let mut b = vec![field.one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_discrepancy = field.one();

    for i in 0..seq.len() {
        let mut d = seq[i].clone();
        for j in 1..=len.min(c.len() - 1) {
            d = field.add(&d, &field.mul(&c[j], &seq[i - j]));
        }
        if field.is_zero(&d) {
            shift += 1;
            continue;
        }
        let coef = field
            .div(&d, &last_discrepancy)
            .expect("last discrepancy is nonzero by construction");
        let previous = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, field.zero());
        }
        for (j, bj) in b.iter().enumerate() {
            c[j + shift] = field.sub(&c[j + shift], &field.mul(&coef, bj));
        }
        if 2 * len <= i {
            len = i + 1 - len;
            b = previous;
            last_discrepancy = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }

    c.resize(len + 1, field.zero());
    c.reverse();
    c
}

/// Checks `sum_k zeta_k a_{j+k} = 0` for every window of `seq`.
pub fn annihilates<F: Field>(field: &F, zeta: &[F::Elem], seq: &[F::Elem]) -> bool {
    let width = zeta.len();
    if width == 0 {
        return seq.iter().all(|a| field.is_zero(a));
    }
    seq.windows(width).all(|w| field.is_zero(&field.dot(zeta, w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtensionField, FiniteField, PrimeField};
    use proptest::prelude::*;

    #[test]
    fn recovers_two_term_generator() {
        let f = PrimeField::new(7).unwrap();
        let seq = [4, 0, 6, 4];
        let zeta = berlekamp_massey(&f, &seq);
        assert_eq!(zeta, vec![2, 4, 1]);
        // a_2 = -(4 a_1 + 2 a_0), a_3 = -(4 a_2 + 2 a_1)
        assert_eq!(f.neg(&f.add(&f.mul(&4, &0), &f.mul(&2, &4))), 6);
        assert_eq!(f.neg(&f.add(&f.mul(&4, &6), &f.mul(&2, &0))), 4);
        assert!(annihilates(&f, &zeta, &seq));
    }

    #[test]
    fn zero_and_constant_sequences() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(berlekamp_massey(&f, &[0, 0, 0, 0]), vec![1]);
        assert_eq!(berlekamp_massey(&f, &[5, 5, 5, 5]), vec![6, 1]);
    }

    proptest! {
        #[test]
        fn generator_of_power_sums(
            roots_idx in proptest::collection::btree_set(1u64..100, 0..8),
            coeffs in proptest::collection::vec(1u64..101, 8),
        ) {
            let f = PrimeField::new(101).unwrap();
            let roots: Vec<u64> = roots_idx.iter().map(|&d| f.pow(f.primitive(), d as u128)).collect();
            let t = roots.len();
            let seq: Vec<u64> = (0..2 * t.max(1)).map(|i| {
                roots.iter().zip(&coeffs).fold(0, |acc, (v, c)| f.add(&acc, &f.mul(c, &f.pow(v, i as u128))))
            }).collect();
            let zeta = berlekamp_massey(&f, &seq);
            prop_assert_eq!(zeta, crate::field::dense::from_roots(&f, &roots));
        }

        #[test]
        fn always_annihilates(seq in proptest::collection::vec(0u64..2, 0..24)) {
            let f = ExtensionField::new(2, 3).unwrap();
            let seq: Vec<_> = seq.iter().map(|&x| f.from_base(x)).collect();
            let zeta = berlekamp_massey(&f, &seq);
            prop_assert!(annihilates(&f, &zeta, &seq));
        }
    }
}
