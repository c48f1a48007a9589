use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Baby-step giant-step table for logarithms to a fixed base within a
/// bounded exponent range. Building costs `O(sqrt(bound))` field
/// operations; each lookup costs at most as many again.
#[derive(Debug, Clone)]
pub struct BabyGiant<E> {
    omega: E,
    bound: u64,
    step: u64,
    baby: HashMap<E, u64>,
    giant: E,
}

impl<E: Clone + Eq + std::hash::Hash> BabyGiant<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, omega: &E, bound: u64) -> Result<Self> {
        if field.is_zero(omega) {
            return Err(Error::InvalidInput("logarithm base must be nonzero".into()));
        }
        let step = ceil_sqrt(bound.saturating_add(1));
        let mut baby = HashMap::with_capacity(step as usize);
        let mut x = field.one();
        for j in 0..step {
            // keep the smallest exponent if omega has small order
            baby.entry(x.clone()).or_insert(j);
            x = field.mul(&x, omega);
        }
        let giant = field.inv(&x)?;
        Ok(BabyGiant {
            omega: omega.clone(),
            bound,
            step,
            baby,
            giant,
        })
    }

    pub fn base(&self) -> &E {
        &self.omega
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Smallest `e <= bound` with `omega^e = v`. `bound` may not exceed the
    /// bound the table was built for.
    pub fn log<F: Field<Elem = E>>(&self, field: &F, v: &E, bound: u64) -> Result<u64> {
        if bound > self.bound {
            return Err(Error::InvalidInput(format!(
                "table covers exponents up to {}, asked for {bound}",
                self.bound
            )));
        }
        let mut gamma = v.clone();
        for i in 0..=bound / self.step {
            if let Some(&j) = self.baby.get(&gamma) {
                let e = i * self.step + j;
                return if e <= bound { Ok(e) } else { Err(Error::DlogNotFound { bound }) };
            }
            gamma = field.mul(&gamma, &self.giant);
        }
        Err(Error::DlogNotFound { bound })
    }
}

/// Exponent `e` in `[0, bound]` with `omega^e = v`.
pub fn bsgs_dlog<F: Field>(field: &F, v: &F::Elem, omega: &F::Elem, bound: u64) -> Result<u64> {
    BabyGiant::new(field, omega, bound)?.log(field, v, bound)
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtensionField, FiniteField, PrimeField};

    #[test]
    fn small_examples() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(bsgs_dlog(&f, &2, &3, 6).unwrap(), 2);
        assert_eq!(bsgs_dlog(&f, &1, &3, 6).unwrap(), 0);
        assert_eq!(bsgs_dlog(&f, &6, &3, 2), Err(Error::DlogNotFound { bound: 2 }));
        assert!(bsgs_dlog(&f, &0, &3, 6).is_err());
    }

    #[test]
    fn ceil_sqrt_values() {
        for n in 0..2000u64 {
            let r = ceil_sqrt(n);
            assert!(r * r >= n && (r == 1 || (r - 1) * (r - 1) < n), "n={n}");
        }
        assert_eq!(ceil_sqrt(u64::MAX), 1 << 32);
    }

    #[test]
    fn every_exponent_recovered() {
        let f = PrimeField::new(30_000_000_001).unwrap();
        let bound = 5000;
        let table = BabyGiant::new(&f, f.primitive(), bound).unwrap();
        let mut x = 1u64;
        for e in 0..=bound {
            assert_eq!(table.log(&f, &x, bound).unwrap(), e);
            x = f.mul(&x, f.primitive());
        }
        // just past the bound
        assert!(table.log(&f, &x, bound).is_err());
        assert_eq!(table.log(&f, &f.pow(f.primitive(), 40), 39), Err(Error::DlogNotFound { bound: 39 }));
    }

    #[test]
    fn extension_field_logs() {
        let f = ExtensionField::new(2, 10).unwrap();
        let w = f.primitive().clone();
        for e in [0u64, 1, 500, 1022] {
            assert_eq!(bsgs_dlog(&f, &f.pow(&w, e as u128), &w, 1022).unwrap(), e);
        }
    }
}
