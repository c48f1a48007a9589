//! Plain-text polynomial files.
//!
//! ```text
//! # f = 2*x1 + 3*x2 over F_101
//! 2 101 1
//! 2 1 0
//! 3 0 1
//! ```
//!
//! The header is `n q m`. When `m > 1` an optional `modulus c0 c1 ... cm`
//! line may follow, giving the monic defining polynomial low degree first.
//! Each remaining line is `coeff e1 ... en`; extension coefficients are
//! written `c0,c1,...,c(m-1)`. Everything after `#` is ignored.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFile {
    pub n: usize,
    pub q: u64,
    pub m: usize,
    pub modulus: Option<Vec<u64>>,
    /// `(coefficient coordinates, exponents)` per term.
    pub terms: Vec<(Vec<u64>, Vec<u64>)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_u64(tok: &str, line: usize) -> Result<u64> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, got {tok:?}")))
}

impl PolyFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n q m`"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(parse_err(hline, "header must be `n q m`"));
        }
        let n = parse_u64(h[0], hline)? as usize;
        let q = parse_u64(h[1], hline)?;
        let m = parse_u64(h[2], hline)? as usize;
        if m == 0 {
            return Err(parse_err(hline, "extension degree must be at least 1"));
        }

        let mut file = PolyFile {
            n,
            q,
            m,
            modulus: None,
            terms: Vec::new(),
        };
        for (lno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "modulus" {
                if m == 1 || file.modulus.is_some() || !file.terms.is_empty() {
                    return Err(parse_err(lno, "unexpected modulus line"));
                }
                let coeffs = toks[1..]
                    .iter()
                    .map(|t| parse_u64(t, lno))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != m + 1 {
                    return Err(parse_err(lno, format!("modulus needs {} coefficients", m + 1)));
                }
                file.modulus = Some(coeffs);
                continue;
            }
            if toks.len() != n + 1 {
                return Err(parse_err(
                    lno,
                    format!("expected a coefficient and {n} exponents, got {} fields", toks.len()),
                ));
            }
            let coeff = toks[0]
                .split(',')
                .map(|t| parse_u64(t, lno))
                .collect::<Result<Vec<_>>>()?;
            if coeff.len() > m || coeff.iter().any(|&c| c >= q) {
                return Err(parse_err(lno, format!("coefficient {:?} is not in F_{q}^{m}", toks[0])));
            }
            let exps = toks[1..]
                .iter()
                .map(|t| parse_u64(t, lno))
                .collect::<Result<Vec<_>>>()?;
            file.terms.push((coeff, exps));
        }
        Ok(file)
    }

    /// True when every coefficient lies in `F_q`.
    pub fn is_base_field(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.iter().skip(1).all(|&x| x == 0))
    }

    /// Builds the polynomial over `field`. Base-field coefficients embed
    /// into any extension of `F_q`; other coefficients need `field` to have
    /// the file's extension degree.
    pub fn to_poly<F: Field>(&self, field: &F) -> Result<MultiPoly<F::Elem>> {
        if field.characteristic() != self.q {
            return Err(Error::InvalidInput(format!(
                "file is over characteristic {}, field has {}",
                self.q,
                field.characteristic()
            )));
        }
        let base_only = self.is_base_field();
        if !base_only && field.degree() != self.m {
            return Err(Error::NonBaseCoefficient);
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| {
                let coeff = if base_only {
                    field.from_base(c.first().copied().unwrap_or(0))
                } else {
                    field.from_coeffs(c)?
                };
                Ok((coeff, e.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(field, self.n, terms)
    }

    /// Serialization model of `poly`. With `project_to_base` every
    /// coefficient must lie in `F_q` and the file is written with `m = 1`.
    pub fn from_poly<F: Field>(field: &F, poly: &MultiPoly<F::Elem>, project_to_base: bool) -> Result<Self> {
        let m = if project_to_base { 1 } else { field.degree() };
        let terms = poly
            .terms()
            .iter()
            .map(|t| {
                let coeff = if project_to_base {
                    vec![field.to_base(&t.coeff).ok_or(Error::NonBaseCoefficient)?]
                } else {
                    field.to_coeffs(&t.coeff)
                };
                Ok((coeff, t.exps.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyFile {
            n: poly.arity(),
            q: field.characteristic(),
            m,
            modulus: None,
            terms,
        })
    }
}

impl fmt::Display for PolyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.n, self.q, self.m)?;
        if let Some(modulus) = &self.modulus {
            write!(f, "modulus")?;
            for c in modulus {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        for (coeff, exps) in &self.terms {
            let c: Vec<String> = coeff.iter().map(u64::to_string).collect();
            write!(f, "{}", c.join(","))?;
            for e in exps {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtensionField, PrimeField};
    use crate::poly::random_poly;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_commented_file() {
        let text = "# f = 2 x1 + 3 x2\n2 101 1  # header\n\n2 1 0\n3 0 1 # second\n";
        let file = PolyFile::parse(text).unwrap();
        assert_eq!((file.n, file.q, file.m), (2, 101, 1));
        let field = PrimeField::new(101).unwrap();
        let poly = file.to_poly(&field).unwrap();
        assert_eq!(poly.len(), 2);
        assert_eq!(poly.eval(&field, &[1, 1]).unwrap(), 5);
    }

    #[test]
    fn empty_body_is_zero_polynomial() {
        let file = PolyFile::parse("3 7 1\n").unwrap();
        assert!(file.to_poly(&PrimeField::new(7).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(PolyFile::parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(PolyFile::parse("2 7 1\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(PolyFile::parse("1 7 1\n9 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(PolyFile::parse("1 7 1\nx 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(PolyFile::parse("1 7 1\nmodulus 1 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn extension_coefficients() {
        let field = ExtensionField::new(5, 2).unwrap();
        let text = format!(
            "1 5 2\nmodulus {}\n1,2 3\n4 0\n",
            field.modulus().iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        );
        let file = PolyFile::parse(&text).unwrap();
        assert!(!file.is_base_field());
        let poly = file.to_poly(&field).unwrap();
        assert_eq!(poly.terms()[1].coeff.coeffs(), &[1, 2]);
        assert!(file.to_poly(&ExtensionField::new(5, 3).unwrap()).is_err());
        assert!(PolyFile::from_poly(&field, &poly, true).is_err());
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(seed in any::<u64>(), n in 1usize..4, t in 0usize..8) {
            let field = PrimeField::new(30_000_000_001).unwrap();
            let poly = random_poly(&field, n, t, 12, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let text = PolyFile::from_poly(&field, &poly, true).unwrap().to_string();
            let back = PolyFile::parse(&text).unwrap().to_poly(&field).unwrap();
            prop_assert_eq!(back, poly);
        }
    }
}
