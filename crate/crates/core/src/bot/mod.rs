//! Univariate sparse interpolation over a finite field by the Ben-Or/Tiwari
//! method: `2T` queries at powers of a primitive element, a minimal linear
//! recurrence, exponent recovery, then a transposed Vandermonde solve.
//!
//! Two exponent recovery back-ends are provided. [`bot_exhaustive`] scans
//! `omega^0..omega^D'` for roots of the recurrence polynomial;
//! [`bot_dlog`] factors it and takes discrete logarithms.

mod bm;
mod dlog;
mod roots;
mod vandermonde;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

pub use bm::{annihilates, berlekamp_massey};
pub use dlog::{bsgs_dlog, BabyGiant};
pub use roots::{find_roots, find_roots_with_rng};
pub use vandermonde::solve_transposed_vandermonde;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::{dense, FiniteField};
use crate::oracle::BlackBox;
use crate::poly::UniPoly;

/// Candidates per scan chunk.
const SCAN_CHUNK: u64 = 1 << 14;
/// Chunks handed to the pool between early-exit checks.
const SCAN_BATCH: u64 = 16;

/// Smallest `m >= 1` with `q^m >= d_prime + 2`, so that `omega^d` is
/// distinct for every `d` in `[0, d_prime]`.
pub fn choose_extension(q: u64, d_prime: u64) -> usize {
    let need = d_prime as u128 + 2;
    let mut m = 1;
    let mut size = q as u128;
    while size < need {
        size = size.saturating_mul(q as u128);
        m += 1;
    }
    m
}

/// Intermediate state of one interpolation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BotWorkspace<E> {
    /// The term bound minus one.
    pub tau: usize,
    /// `a_i = h(omega^i)` for `i < 2(tau + 1)`.
    pub a: Vec<E>,
    /// Monic recurrence polynomial, low degree first.
    pub zeta: Vec<E>,
    /// Roots of `zeta`, ordered by exponent.
    pub roots: Vec<E>,
    pub exps: Vec<u64>,
}

/// Exponent recovery strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    Exhaustive,
    #[default]
    Dlog,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exhaustive => "exhaustive",
            Backend::Dlog => "dlog",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(Backend::Exhaustive),
            "dlog" => Ok(Backend::Dlog),
            other => Err(Error::InvalidInput(format!(
                "unknown backend {other:?}, expected exhaustive or dlog"
            ))),
        }
    }
}

impl Backend {
    pub fn interpolator<F: FiniteField + 'static>(self) -> Box<dyn UnivariateInterpolator<F>> {
        match self {
            Backend::Exhaustive => Box::new(ExhaustiveInterpolator),
            Backend::Dlog => Box::new(DlogInterpolator::default()),
        }
    }
}

/// A univariate interpolation routine usable by the multivariate reduction.
pub trait UnivariateInterpolator<F: FiniteField>: Sync + Send {
    /// Recovers `h` from a univariate oracle given `#h <= terms` and
    /// `deg h <= degree`.
    fn interpolate(
        &self,
        field: &F,
        oracle: &dyn BlackBox<F::Elem>,
        terms: usize,
        degree: u64,
    ) -> Result<UniPoly<F::Elem>>;

    fn backend(&self) -> Backend;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExhaustiveInterpolator;

impl<F: FiniteField> UnivariateInterpolator<F> for ExhaustiveInterpolator {
    fn interpolate(
        &self,
        field: &F,
        oracle: &dyn BlackBox<F::Elem>,
        terms: usize,
        degree: u64,
    ) -> Result<UniPoly<F::Elem>> {
        bot_exhaustive(field, oracle, terms, degree)
    }

    fn backend(&self) -> Backend {
        Backend::Exhaustive
    }
}

/// Discrete-log back-end. Keeps the largest baby-step table built so far
/// and reuses it for every smaller degree bound.
#[derive(Debug)]
pub struct DlogInterpolator<E> {
    table: RwLock<Option<Arc<BabyGiant<E>>>>,
}

impl<E> Default for DlogInterpolator<E> {
    fn default() -> Self {
        DlogInterpolator {
            table: RwLock::new(None),
        }
    }
}

impl<E: Clone + Eq + std::hash::Hash> DlogInterpolator<E> {
    fn table<F: FiniteField<Elem = E>>(&self, field: &F, bound: u64) -> Result<Arc<BabyGiant<E>>> {
        let usable = |t: &Arc<BabyGiant<E>>| t.bound() >= bound && t.base() == field.primitive();
        if let Some(t) = self.table.read().expect("table lock").as_ref().filter(|t| usable(t)) {
            return Ok(Arc::clone(t));
        }
        let fresh = Arc::new(BabyGiant::new(field, field.primitive(), bound)?);
        let mut slot = self.table.write().expect("table lock");
        if slot.as_ref().is_none_or(|t| !usable(t)) {
            *slot = Some(Arc::clone(&fresh));
        }
        Ok(fresh)
    }
}

impl<F: FiniteField> UnivariateInterpolator<F> for DlogInterpolator<F::Elem> {
    fn interpolate(
        &self,
        field: &F,
        oracle: &dyn BlackBox<F::Elem>,
        terms: usize,
        degree: u64,
    ) -> Result<UniPoly<F::Elem>> {
        check_field_size(field, degree)?;
        let table = self.table(field, degree)?;
        run(field, oracle, terms, degree, |zeta| {
            dlog_exponents(field, zeta, &table, degree)
        })
        .map(|(h, _)| h)
    }

    fn backend(&self) -> Backend {
        Backend::Dlog
    }
}

/// Interpolates `h` with `#h <= terms` and `deg h <= degree` using exactly
/// `2 * terms` queries and a scan over all candidate exponents.
pub fn bot_exhaustive<F: FiniteField>(
    field: &F,
    oracle: &dyn BlackBox<F::Elem>,
    terms: usize,
    degree: u64,
) -> Result<UniPoly<F::Elem>> {
    bot_exhaustive_traced(field, oracle, terms, degree).map(|(h, _)| h)
}

/// [`bot_exhaustive`] that also returns its workspace.
pub fn bot_exhaustive_traced<F: FiniteField>(
    field: &F,
    oracle: &dyn BlackBox<F::Elem>,
    terms: usize,
    degree: u64,
) -> Result<(UniPoly<F::Elem>, BotWorkspace<F::Elem>)> {
    check_field_size(field, degree)?;
    run(field, oracle, terms, degree, |zeta| scan_exponents(field, zeta, degree))
}

/// Same contract as [`bot_exhaustive`]; exponents come from root finding
/// and baby-step giant-step logarithms.
pub fn bot_dlog<F: FiniteField>(
    field: &F,
    oracle: &dyn BlackBox<F::Elem>,
    terms: usize,
    degree: u64,
) -> Result<UniPoly<F::Elem>> {
    check_field_size(field, degree)?;
    let table = BabyGiant::new(field, field.primitive(), degree)?;
    run(field, oracle, terms, degree, |zeta| {
        dlog_exponents(field, zeta, &table, degree)
    })
    .map(|(h, _)| h)
}

fn check_field_size<F: FiniteField>(field: &F, degree: u64) -> Result<()> {
    if field.size() < degree as u128 + 2 {
        return Err(Error::FieldTooSmall {
            size: field.size(),
            degree,
        });
    }
    Ok(())
}

fn run<F, S>(
    field: &F,
    oracle: &dyn BlackBox<F::Elem>,
    terms: usize,
    degree: u64,
    exponents: S,
) -> Result<(UniPoly<F::Elem>, BotWorkspace<F::Elem>)>
where
    F: FiniteField,
    S: FnOnce(&[F::Elem]) -> Result<Vec<u64>>,
{
    if oracle.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: oracle.arity(),
        });
    }
    let omega = field.primitive();
    let mut a = Vec::with_capacity(2 * terms);
    let mut x = field.one();
    for _ in 0..2 * terms {
        a.push(oracle.eval(std::slice::from_ref(&x))?);
        x = field.mul(&x, omega);
    }

    let zeta = berlekamp_massey(field, &a);
    if !annihilates(field, &zeta, &a) {
        return Err(Error::BoundViolation("recurrence does not annihilate the sequence".into()));
    }
    let t = zeta.len() - 1;
    if t > terms {
        return Err(Error::BoundViolation(format!(
            "recurrence of order {t} exceeds the term bound {terms}"
        )));
    }

    let mut exps = if t == 0 { Vec::new() } else { exponents(&zeta)? };
    exps.sort_unstable();
    if exps.len() != t || exps.windows(2).any(|w| w[0] == w[1]) || exps.last().is_some_and(|&e| e > degree) {
        return Err(Error::BoundViolation(format!(
            "found {} exponents in [0, {degree}] for a recurrence of order {t}",
            exps.len()
        )));
    }
    let roots: Vec<F::Elem> = exps.iter().map(|&e| field.pow(omega, e as u128)).collect();
    let coeffs = solve_transposed_vandermonde(field, &roots, &a[..t])?;
    if field.degree() > 1 && coeffs.iter().any(|c| field.to_base(c).is_none()) {
        return Err(Error::NonBaseCoefficient);
    }
    let h = UniPoly::from_terms(field, coeffs.into_iter().zip(exps.iter().copied()));
    let workspace = BotWorkspace {
        tau: terms.saturating_sub(1),
        a,
        zeta,
        roots,
        exps,
    };
    Ok((h, workspace))
}

/// Exponents `i <= degree` with `zeta(omega^i) = 0`, scanning in chunks
/// that start from `omega^{chunk_start}` and stopping once all
/// `deg zeta` roots are found.
fn scan_exponents<F: FiniteField>(field: &F, zeta: &[F::Elem], degree: u64) -> Result<Vec<u64>> {
    let want = zeta.len() - 1;
    let omega = field.primitive();
    let chunks = degree / SCAN_CHUNK + 1;
    let mut found = Vec::with_capacity(want);
    let mut next = 0;
    while next < chunks && found.len() < want {
        let batch = SCAN_BATCH.min(chunks - next);
        let hits = exec::map_indexed(batch as usize, |k| {
            let start = (next + k as u64) * SCAN_CHUNK;
            let end = (start + SCAN_CHUNK - 1).min(degree);
            let mut x = field.pow(omega, start as u128);
            let mut local = Vec::new();
            for i in start..=end {
                if field.is_zero(&dense::eval(field, zeta, &x)) {
                    local.push(i);
                }
                x = field.mul(&x, omega);
            }
            local
        });
        found.extend(hits.into_iter().flatten());
        next += batch;
    }
    Ok(found)
}

fn dlog_exponents<F: FiniteField>(
    field: &F,
    zeta: &[F::Elem],
    table: &BabyGiant<F::Elem>,
    degree: u64,
) -> Result<Vec<u64>> {
    find_roots(field, zeta)?
        .iter()
        .map(|v| table.log(field, v, degree))
        .collect()
}
