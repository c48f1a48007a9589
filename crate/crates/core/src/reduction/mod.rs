//! Multivariate interpolation by randomized Kronecker substitution.
//!
//! Each round samples substitutions `x_k -> x^{s_k}` with `s` drawn modulo a
//! random prime `p`, interpolates the univariate images, keeps the one that
//! loses the fewest terms modulo `x^p - 1`, and reads off the exponent
//! vectors of the surviving terms from `n` shifted images. Rounds repeat
//! with a halved term bound until the residual is empty.

mod primes;
mod terms;

use std::collections::HashSet;

use rand::Rng;

pub use primes::{pool_size, prime_pool, primes_from, primes_up_to};
pub use terms::{collision_count, residue, ts_terms};

use crate::bot::UnivariateInterpolator;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::FiniteField;
use crate::oracle::{make_univariate_oracle, BlackBox};
use crate::poly::{MultiPoly, UniPoly};

/// A prime and a substitution vector with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubstitutionPair {
    pub p: u64,
    pub s: Vec<u64>,
}

impl SubstitutionPair {
    pub fn max_entry(&self) -> u64 {
        self.s.iter().copied().max().unwrap_or(0)
    }

    /// `s + p e_k`.
    pub fn shifted(&self, k: usize) -> Vec<u64> {
        let mut s = self.s.clone();
        s[k] += self.p;
        s
    }
}

/// Bounds and tolerances for one interpolation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionConfig {
    /// Term bound, `T >= #f`.
    pub terms: usize,
    /// Degree bound, `D >= deg f`.
    pub degree: u64,
    /// Overall failure probability.
    pub mu: f64,
    /// Per-round failure probability `mu / (ceil(log2 T) + 1)`.
    pub nu: f64,
}

impl ReductionConfig {
    pub fn new(terms: usize, degree: u64, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu < 1.0) {
            return Err(Error::InvalidInput(format!("mu must lie in (0, 1), got {mu}")));
        }
        let rounds = ceil_log2(terms.max(1) as u64) + 1;
        Ok(ReductionConfig {
            terms,
            degree,
            mu,
            nu: mu / rounds as f64,
        })
    }

    /// Substitution count `ceil(32 ln(t1 / nu))` for a round with term
    /// bound `t1`.
    pub fn substitutions(&self, t1: usize) -> usize {
        substitution_count(t1, self.nu)
    }

    /// Term bounds of the successive rounds: `T, floor(T/2), ..., 1`.
    pub fn round_bounds(&self) -> Vec<usize> {
        std::iter::successors(Some(self.terms), |&t| Some(t / 2))
            .take_while(|&t| t > 0)
            .collect()
    }
}

pub fn substitution_count(t1: usize, nu: f64) -> usize {
    (32.0 * (t1 as f64 / nu).ln()).ceil().max(1.0) as usize
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        u64::from(64 - (x - 1).leading_zeros())
    }
}

/// Largest univariate degree bound any round can request: the top prime of
/// each round's pool gives shifted entries below `2p`.
pub fn max_univariate_degree(terms: usize, degree: u64) -> Result<u64> {
    let mut worst = 0u64;
    let mut t1 = terms;
    while t1 > 0 {
        let p = *prime_pool(t1, degree).last().expect("pool is nonempty");
        let bound = (2 * p - 1)
            .checked_mul(degree)
            .ok_or(Error::Overflow("computing the univariate degree bound"))?;
        worst = worst.max(bound);
        t1 /= 2;
    }
    Ok(worst)
}

/// `l` independent draws of a prime from `pool` and a uniform `s` in
/// `Z_p^n`; repeated pairs are dropped, keeping first occurrences.
pub fn sample_substitutions<R: Rng + ?Sized>(
    pool: &[u64],
    n: usize,
    l: usize,
    rng: &mut R,
) -> Vec<SubstitutionPair> {
    assert!(!pool.is_empty(), "empty prime pool");
    let mut seen = HashSet::with_capacity(l);
    let mut out = Vec::with_capacity(l);
    for _ in 0..l {
        let p = pool[rng.gen_range(0..pool.len())];
        let s = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let pair = SubstitutionPair { p, s };
        if seen.insert(pair.clone()) {
            out.push(pair);
        }
    }
    out
}

/// Result of one halving round.
#[derive(Debug, Clone)]
pub struct HalfPolyOutput<E> {
    pub poly: MultiPoly<E>,
    pub pairs: Vec<SubstitutionPair>,
    /// Index into `pairs` of the selected substitution.
    pub selected: usize,
    /// `#f_mod` for the selected substitution.
    pub survivors: usize,
    /// Univariate interpolations performed.
    pub jobs: usize,
}

/// One round: returns `h` with `#(f - f_star - h) <= t1 / 2` with
/// probability at least `1 - nu`.
#[allow(clippy::too_many_arguments)]
pub fn half_poly<F, R>(
    field: &F,
    oracle: &dyn BlackBox<F::Elem>,
    f_star: &MultiPoly<F::Elem>,
    terms: usize,
    t1: usize,
    degree: u64,
    nu: f64,
    interp: &dyn UnivariateInterpolator<F>,
    rng: &mut R,
) -> Result<HalfPolyOutput<F::Elem>>
where
    F: FiniteField,
    R: Rng + ?Sized,
{
    let n = oracle.arity();
    if f_star.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: f_star.arity(),
        });
    }
    let pool = prime_pool(t1, degree);
    let pairs = sample_substitutions(&pool, n, substitution_count(t1, nu), rng);

    let images = exec::map_slice(&pairs, |pair| -> Result<(UniPoly<F::Elem>, UniPoly<F::Elem>)> {
        let bound = univariate_bound(pair.max_entry(), degree)?;
        let uni = make_univariate_oracle(field, oracle, pair.s.clone())?;
        let f_s = interp.interpolate(field, &uni, terms, bound)?;
        let f_i = f_s.sub(field, &f_star.kronecker_sub(field, &pair.s)?);
        let f_mod = f_i.mod_cyclic(field, pair.p);
        Ok((f_i, f_mod))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    // first index of maximal #f_mod
    let selected = images
        .iter()
        .enumerate()
        .fold(0, |best, (i, (_, m))| if m.len() > images[best].1.len() { i } else { best });
    let (f_s, f_mod) = &images[selected];
    if f_mod.len() > t1 {
        return Err(Error::ReductionFailure {
            found: f_mod.len(),
            bound: t1,
        });
    }

    let pair = &pairs[selected];
    let star_images = f_star.poly_subs(field, &pair.s, pair.p)?;
    let shifted = exec::map_indexed(n, |k| -> Result<UniPoly<F::Elem>> {
        let s = pair.shifted(k);
        let bound = univariate_bound(s[k].max(pair.max_entry()), degree)?;
        let uni = make_univariate_oracle(field, oracle, s)?;
        let g = interp.interpolate(field, &uni, terms, bound)?;
        Ok(g.sub(field, &star_images[k]))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let poly = ts_terms(field, f_mod, f_s, &shifted, pair.p, &pair.s, degree)?;
    Ok(HalfPolyOutput {
        poly,
        survivors: f_mod.len(),
        jobs: pairs.len() + n,
        pairs,
        selected,
    })
}

fn univariate_bound(max_entry: u64, degree: u64) -> Result<u64> {
    max_entry
        .checked_mul(degree)
        .ok_or(Error::Overflow("computing the univariate degree bound"))
}

/// Per-round statistics of [`mul_poly_si`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundStats {
    pub t1: usize,
    /// Prescribed substitution count before deduplication.
    pub l: usize,
    /// Distinct pairs actually interpolated.
    pub pairs: usize,
    pub jobs: usize,
    pub survivors: usize,
    /// Terms added to the running result.
    pub found: usize,
}

#[derive(Debug, Clone)]
pub struct Interpolation<E> {
    pub poly: MultiPoly<E>,
    pub rounds: Vec<RoundStats>,
}

impl<E> Interpolation<E> {
    pub fn jobs(&self) -> usize {
        self.rounds.iter().map(|r| r.jobs).sum()
    }
}

/// Interpolates the polynomial behind `oracle` given `#f <= terms` and
/// `deg f <= degree`; correct with probability at least `1 - mu`.
pub fn mul_poly_si<F, R>(
    field: &F,
    oracle: &dyn BlackBox<F::Elem>,
    config: &ReductionConfig,
    interp: &dyn UnivariateInterpolator<F>,
    rng: &mut R,
) -> Result<Interpolation<F::Elem>>
where
    F: FiniteField,
    R: Rng + ?Sized,
{
    let mut h = MultiPoly::zero(oracle.arity());
    let mut rounds = Vec::new();
    for t1 in config.round_bounds() {
        let out = half_poly(field, oracle, &h, config.terms, t1, config.degree, config.nu, interp, rng)?;
        h = h.add(field, &out.poly)?;
        rounds.push(RoundStats {
            t1,
            l: config.substitutions(t1),
            pairs: out.pairs.len(),
            jobs: out.jobs,
            survivors: out.survivors,
            found: out.poly.len(),
        });
    }
    Ok(Interpolation { poly: h, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bot::{Backend, ExhaustiveInterpolator};
    use crate::field::{ExtensionField, Field, PrimeField};
    use crate::oracle::PolyOracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn config_formulas() {
        let c = ReductionConfig::new(20, 30, 0.25).unwrap();
        assert!((c.nu - 0.25 / 6.0).abs() < 1e-15);
        assert_eq!(c.substitutions(20), (32.0 * (480.0f64).ln()).ceil() as usize);
        assert_eq!(c.round_bounds(), vec![20, 10, 5, 2, 1]);
        assert_eq!(ReductionConfig::new(1, 1, 0.5).unwrap().nu, 0.5);
        assert_eq!(ReductionConfig::new(4, 1, 0.3).unwrap().round_bounds(), vec![4, 2, 1]);
        assert!(ReductionConfig::new(4, 1, 1.5).is_err());
        assert!(ReductionConfig::new(4, 1, 0.0).is_err());
        assert!(ReductionConfig::new(0, 1, 0.5).unwrap().round_bounds().is_empty());
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(
            [1u64, 2, 3, 4, 5, 8, 9, 20].map(ceil_log2),
            [0, 1, 2, 2, 3, 3, 4, 5]
        );
    }

    #[test]
    fn sampling_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pairs = sample_substitutions(&[2], 1, 3, &mut rng);
        assert!(pairs.len() <= 2);
        let pool = prime_pool(4, 16);
        let a = sample_substitutions(&pool, 4, 50, &mut ChaCha8Rng::seed_from_u64(9));
        let b = sample_substitutions(&pool, 4, 50, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
        assert!(a.iter().all(|pr| pool.contains(&pr.p) && pr.s.iter().all(|&x| x < pr.p)));
    }

    #[test]
    fn half_poly_zero_residual() {
        let f = PrimeField::new(1_000_003).unwrap();
        let g = MultiPoly::from_terms(&f, 2, [(4, vec![1, 1]), (9, vec![0, 3])]).unwrap();
        let oracle = PolyOracle::new(f.clone(), g.clone());
        let out = half_poly(&f, &oracle, &g, 2, 2, 3, 0.1, &ExhaustiveInterpolator, &mut ChaCha8Rng::seed_from_u64(3))
            .unwrap();
        assert!(out.poly.is_zero());
        assert_eq!(out.survivors, 0);
    }

    #[test]
    fn half_poly_two_terms() {
        let m = crate::bot::choose_extension(101, max_univariate_degree(2, 1).unwrap());
        let ext = ExtensionField::new(101, m).unwrap();
        let g = MultiPoly::from_terms(&ext, 2, [(ext.from_base(2), vec![1, 0]), (ext.from_base(3), vec![0, 1])])
            .unwrap();
        let oracle = PolyOracle::new(ext.clone(), g.clone());
        let mut ok = 0;
        for seed in 0..20 {
            let out = half_poly(
                &ext,
                &oracle,
                &MultiPoly::zero(2),
                2,
                2,
                1,
                0.1,
                &ExhaustiveInterpolator,
                &mut ChaCha8Rng::seed_from_u64(seed),
            )
            .unwrap();
            ok += usize::from(out.poly == g);
        }
        assert!(ok >= 18, "{ok}/20");
    }

    #[test]
    fn end_to_end_small() {
        let q = 30_000_000_001;
        let f = PrimeField::with_primitive(q, 29).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let g = crate::poly::random_poly(&f, 3, 6, 10, &mut rng).unwrap();
        let config = ReductionConfig::new(6, 10, 0.25).unwrap();
        for backend in [Backend::Exhaustive, Backend::Dlog] {
            let interp = backend.interpolator::<PrimeField>();
            let oracle = PolyOracle::new(f.clone(), g.clone());
            let out = mul_poly_si(&f, &oracle, &config, interp.as_ref(), &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
            assert_eq!(out.poly, g, "{backend}");
            let expected: usize = out.rounds.iter().map(|r| (r.pairs + 3) * 2 * 6).sum();
            assert_eq!(oracle.queries(), expected as u64);
            assert_eq!(out.rounds.len(), 3);
        }
    }

    #[test]
    fn zero_oracle() {
        let f = PrimeField::new(7).unwrap();
        let oracle = PolyOracle::new(f.clone(), MultiPoly::zero(3));
        let config = ReductionConfig::new(1, 1, 0.25).unwrap();
        let out = mul_poly_si(&f, &oracle, &config, &ExhaustiveInterpolator, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(out.poly.is_zero());
    }

    #[test]
    fn max_degree_covers_every_request() {
        let d = max_univariate_degree(5, 7).unwrap();
        let top = *prime_pool(5, 7).last().unwrap();
        assert_eq!(d, (2 * top - 1) * 7);
    }
}
