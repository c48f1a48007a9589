use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_primitive, dense, find_primitive, Field, FiniteField, ModQ};
use crate::error::{Error, Result};

/// Element of `F_{q^m}` in the polynomial basis `1, z, ..., z^{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// `F_{q^m} = F_q[z] / (modulus)`.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    base: ModQ,
    m: usize,
    /// Monic, `m + 1` coefficients, low degree first.
    modulus: Vec<u64>,
    size: u128,
    omega: FieldElem,
}

/// Ben-Or's test: `f` of degree `m` is irreducible iff
/// `gcd(f, z^{q^i} - z) = 1` for every `1 <= i <= m/2`.
pub fn is_irreducible(base: &ModQ, f: &[u64]) -> Result<bool> {
    let f = dense::trim(base, f.to_vec());
    let m = match dense::degree(&f) {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(d) => d,
    };
    let z = vec![0, 1];
    let mut h = z.clone();
    for _ in 1..=m / 2 {
        h = dense::pow_mod(base, &h, base.modulus() as u128, &f)?;
        let g = dense::gcd(base, &f, &dense::sub(base, &h, &z))?;
        if g.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random monic irreducible polynomial of degree `m >= 2` over `F_q`.
pub fn find_irreducible<R: Rng + ?Sized>(q: u64, m: usize, rng: &mut R) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::InvalidInput(format!(
            "irreducible search needs degree >= 2, got {m}"
        )));
    }
    let base = ModQ::new(q)?;
    loop {
        let mut f: Vec<u64> = (0..m).map(|_| rng.gen_range(0..q)).collect();
        f.push(1);
        if f[0] != 0 && is_irreducible(&base, &f)? {
            return Ok(f);
        }
    }
}

fn checked_size(q: u64, m: usize) -> Result<u128> {
    (0..m).try_fold(1u128, |acc, _| acc.checked_mul(q as u128))
        .ok_or(Error::Overflow("computing q^m"))
}

impl ExtensionField {
    /// `F_{q^m}` over a pseudo-random irreducible modulus chosen
    /// deterministically from `(q, m)`, with the smallest primitive element
    /// in enumeration order.
    pub fn new(q: u64, m: usize) -> Result<Self> {
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(q ^ ((m as u64) << 48));
            find_irreducible(q, m, &mut rng)?
        };
        Self::with_modulus(q, modulus)
    }

    /// Uses the given monic modulus (low degree first).
    pub fn with_modulus(q: u64, modulus: Vec<u64>) -> Result<Self> {
        let mut field = Self::without_primitive(q, modulus)?;
        field.omega = find_primitive(&field)?;
        Ok(field)
    }

    pub fn with_modulus_and_primitive(q: u64, modulus: Vec<u64>, omega: &[u64]) -> Result<Self> {
        let mut field = Self::without_primitive(q, modulus)?;
        let omega = field.from_coeffs(omega)?;
        check_primitive(&field, &omega)?;
        field.omega = omega;
        Ok(field)
    }

    fn without_primitive(q: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = ModQ::new(q)?;
        let m = modulus.len().saturating_sub(1);
        if m == 0 || modulus[m] != 1 || modulus.iter().any(|&c| c >= q) {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus:?} is not a reduced monic polynomial of positive degree"
            )));
        }
        if !is_irreducible(&base, &modulus)? {
            return Err(Error::InvalidInput(format!("modulus {modulus:?} is reducible")));
        }
        let size = checked_size(q, m)?;
        let mut one = vec![0; m];
        one[0] = 1;
        Ok(ExtensionField {
            base,
            m,
            modulus,
            size,
            omega: FieldElem { coeffs: one },
        })
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn base(&self) -> &ModQ {
        &self.base
    }

    fn reduce(&self, mut wide: Vec<u64>) -> FieldElem {
        let m = self.m;
        let b = &self.base;
        for i in (m..wide.len()).rev() {
            let c = wide[i];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                wide[i - m + j] = b.sub(wide[i - m + j], b.mul(c, self.modulus[j]));
            }
        }
        wide.truncate(m);
        wide.resize(m, 0);
        FieldElem { coeffs: wide }
    }
}

impl Field for ExtensionField {
    type Elem = FieldElem;

    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }
    fn degree(&self) -> usize {
        self.m
    }
    fn size(&self) -> u128 {
        self.size
    }
    fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![0; self.m],
        }
    }
    fn one(&self) -> FieldElem {
        self.from_base(1)
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.add(x, y)).collect(),
        }
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.sub(x, y)).collect(),
        }
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().map(|&x| self.base.neg(x)).collect(),
        }
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let m = self.m;
        let mut wide = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                wide[i + j] = self.base.add(wide[i + j], self.base.mul(x, y));
            }
        }
        self.reduce(wide)
    }
    fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.size - 2))
    }
    fn from_base(&self, c: u64) -> FieldElem {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c % self.base.modulus();
        FieldElem { coeffs }
    }
    fn to_base(&self, a: &FieldElem) -> Option<u64> {
        a.coeffs[1..].iter().all(|&c| c == 0).then_some(a.coeffs[0])
    }
    fn to_coeffs(&self, a: &FieldElem) -> Vec<u64> {
        a.coeffs.clone()
    }
    fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        let q = self.base.modulus();
        if coeffs.len() > self.m || coeffs.iter().any(|&c| c >= q) {
            return Err(Error::InvalidInput(format!(
                "{coeffs:?} is not an element of F_{q}^{}",
                self.m
            )));
        }
        let mut c = coeffs.to_vec();
        c.resize(self.m, 0);
        Ok(FieldElem { coeffs: c })
    }
    fn element(&self, mut index: u128) -> FieldElem {
        let q = self.base.modulus() as u128;
        let coeffs = (0..self.m)
            .map(|_| {
                let d = (index % q) as u64;
                index /= q;
                d
            })
            .collect();
        FieldElem { coeffs }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let q = self.base.modulus();
        FieldElem {
            coeffs: (0..self.m).map(|_| rng.gen_range(0..q)).collect(),
        }
    }
}

impl FiniteField for ExtensionField {
    fn primitive(&self) -> &FieldElem {
        &self.omega
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force irreducibility: no monic factor of degree <= m/2.
    fn has_no_small_factor(q: u64, f: &[u64]) -> bool {
        let base = ModQ::new(q).unwrap();
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut g: Vec<u64> = (0..d).map(|k| idx / q.pow(k as u32) % q).collect();
                g.push(1);
                if dense::rem(&base, f, &g).unwrap().is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(find_irreducible(2, 2, &mut rng).unwrap(), vec![1, 1, 1]);
        assert!(find_irreducible(3, 1, &mut rng).is_err());
    }

    #[test]
    fn irreducible_quartics_over_f2() {
        let mut found = std::collections::BTreeSet::new();
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = find_irreducible(2, 4, &mut rng).unwrap();
            assert!(has_no_small_factor(2, &f));
            found.insert(f);
        }
        // exactly three monic irreducible quartics over F_2
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn ben_or_agrees_with_brute_force() {
        for q in [2u64, 3, 5] {
            let base = ModQ::new(q).unwrap();
            for m in 2..=4usize {
                for idx in 0..q.pow(m as u32) {
                    let mut f: Vec<u64> = (0..m).map(|k| idx / q.pow(k as u32) % q).collect();
                    f.push(1);
                    assert_eq!(
                        is_irreducible(&base, &f).unwrap(),
                        has_no_small_factor(q, &f),
                        "q={q} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(ExtensionField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(ExtensionField::with_modulus(2, vec![1, 1, 2]).is_err());
    }

    #[test]
    fn base_field_projection() {
        let f = ExtensionField::new(101, 2).unwrap();
        assert_eq!(f.to_base(&f.from_base(42)), Some(42));
        assert_eq!(f.to_base(f.primitive()), None);
        assert_eq!(f.size(), 10201);
    }
}
