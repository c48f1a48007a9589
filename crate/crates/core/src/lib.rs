//! Sparse interpolation of multivariate polynomials over finite fields from
//! black-box evaluations.
//!
//! A polynomial is seen only through an evaluation oracle
//! ([`oracle::BlackBox`]). [`reduction::mul_poly_si`] recovers it by
//! mapping it to univariate images with random Kronecker substitutions and
//! interpolating those with the Ben-Or/Tiwari method ([`bot`]).
//!
//! ```
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha8Rng;
//! use sparse_interp::bot::Backend;
//! use sparse_interp::field::{Field, PrimeField};
//! use sparse_interp::oracle::PolyOracle;
//! use sparse_interp::poly::MultiPoly;
//! use sparse_interp::reduction::{mul_poly_si, ReductionConfig};
//!
//! let field = PrimeField::new(30_000_000_001)?;
//! let f = MultiPoly::from_terms(&field, 2, [(5, vec![3, 1]), (7, vec![0, 2])])?;
//! let oracle = PolyOracle::new(field.clone(), f.clone());
//! let config = ReductionConfig::new(2, 4, 0.25)?;
//! let interp = Backend::Dlog.interpolator::<PrimeField>();
//! let found = mul_poly_si(&field, &oracle, &config, interp.as_ref(), &mut ChaCha8Rng::seed_from_u64(1))?;
//! assert_eq!(found.poly, f);
//! # Ok::<(), sparse_interp::Error>(())
//! ```

pub mod bench;
pub mod bot;
pub mod error;
pub mod exec;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod reduction;
pub mod selftest;

pub use error::{Error, Result};
