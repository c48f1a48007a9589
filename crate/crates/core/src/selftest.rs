//! Built-in property suites run by `sparse-interp selftest`. Every suite
//! uses fixed seeds, so a run is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bench::{random_instance, run_hidden, trial_seed, RunSettings, DEFAULT_Q};
use crate::bot::{bot_dlog, bot_exhaustive, Backend};
use crate::error::Result;
use crate::field::{ExtensionField, Field, FiniteField, PrimeField};
use crate::oracle::{BlackBox, FnOracle};
use crate::poly::text::PolyFile;
use crate::poly::{monomial_count, random_poly, MultiPoly, UniPoly};
use crate::reduction::{collision_count, prime_pool, sample_substitutions, substitution_count, ts_terms};

pub const SUITES: &[&str] = &[
    "field",
    "poly",
    "univariate",
    "backends",
    "collision-rate",
    "selection",
    "containment",
    "collision-bound",
    "reduction",
];

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// One line per failed check.
    pub failures: Vec<String>,
    /// Summary figure such as a measured rate.
    pub note: Option<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Runs one suite by name. With `inject_fault` the univariate suite's
/// oracle returns one wrong value, which the suite must catch.
pub fn run_suite(name: &str, inject_fault: bool) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(name);
    match name {
        "field" => field_suite(&mut r)?,
        "poly" => poly_suite(&mut r)?,
        "univariate" => univariate_suite(&mut r, inject_fault)?,
        "backends" => backends_suite(&mut r)?,
        "collision-rate" => collision_rate_suite(&mut r)?,
        "selection" => selection_suite(&mut r)?,
        "containment" => containment_suite(&mut r)?,
        "collision-bound" => collision_bound_suite(&mut r)?,
        "reduction" => reduction_suite(&mut r)?,
        other => {
            return Err(crate::Error::InvalidInput(format!(
                "unknown suite {other:?}; available: {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(r)
}

fn field_laws<F: FiniteField>(r: &mut SuiteReport, field: &F, rng: &mut ChaCha8Rng) {
    let label = format!("F_{}^{}", field.characteristic(), field.degree());
    for _ in 0..200 {
        let (a, b, c) = (field.random(rng), field.random(rng), field.random(rng));
        let distributive = field.mul(&a, &field.add(&b, &c)) == field.add(&field.mul(&a, &b), &field.mul(&a, &c));
        let inverse = field.is_zero(&b) || field.div(&field.mul(&a, &b), &b).ok() == Some(a.clone());
        r.check(distributive && inverse, || format!("{label}: field law failed for {a:?}, {b:?}, {c:?}"));
    }
    let w = field.primitive();
    r.check(field.pow(w, field.order()) == field.one(), || format!("{label}: omega^(Q-1) != 1"));
}

fn field_suite(r: &mut SuiteReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    field_laws(r, &PrimeField::new(7)?, &mut rng);
    let big = PrimeField::new(DEFAULT_Q)?;
    r.check(*big.primitive() == 29, || format!("smallest primitive element is {}", big.primitive()));
    field_laws(r, &big, &mut rng);
    field_laws(r, &ExtensionField::new(2, 8)?, &mut rng);
    field_laws(r, &ExtensionField::new(101, 3)?, &mut rng);
    // powers of a primitive element are distinct
    let f = ExtensionField::new(3, 5)?;
    let mut seen = std::collections::HashSet::new();
    let mut x = f.one();
    for _ in 0..f.order() {
        seen.insert(x.clone());
        x = f.mul(&x, f.primitive());
    }
    r.check(seen.len() as u128 == f.order(), || "primitive element of F_3^5 has short order".into());
    Ok(())
}

fn poly_suite(r: &mut SuiteReport) -> Result<()> {
    let f = PrimeField::new(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let d = rng.gen_range(0..=10);
        let t = (rng.gen_range(0..=8) as u128).min(monomial_count(n, d)) as usize;
        let g = random_poly(&f, n, t, d, &mut rng)?;
        let p = [2u64, 3, 5, 7, 11][rng.gen_range(0..5)];
        let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let theta = rng.gen_range(1..101);
        let uni = g.kronecker_sub(&f, &s)?;
        let point: Vec<u64> = s.iter().map(|&e| f.pow(&theta, e as u128)).collect();
        r.check(uni.eval(&f, &theta) == g.eval(&f, &point)?, || format!("substitution mismatch for s={s:?}"));
        let reduced = uni.mod_cyclic(&f, p);
        let brute = UniPoly::from_terms(&f, uni.terms().iter().map(|(c, e)| (*c, e % p)));
        r.check(reduced == brute, || format!("cyclic reduction mismatch at p={p}"));
        let images = g.poly_subs(&f, &s, p)?;
        for (k, image) in images.iter().enumerate() {
            let mut shifted = s.clone();
            shifted[k] += p;
            r.check(*image == g.kronecker_sub(&f, &shifted)?, || format!("shifted image {k} mismatch"));
        }
        let text = PolyFile::from_poly(&f, &g, false)?.to_string();
        r.check(PolyFile::parse(&text)?.to_poly(&f)? == g, || "text round trip changed the polynomial".into());
    }
    Ok(())
}

fn random_uni<F: Field>(field: &F, t: usize, d: u64, rng: &mut ChaCha8Rng) -> UniPoly<F::Elem> {
    let q = field.characteristic();
    let terms: Vec<_> = (0..t)
        .map(|_| (field.from_base(rng.gen_range(1..q)), rng.gen_range(0..=d)))
        .collect();
    UniPoly::from_terms(field, terms)
}

fn univariate_on<F: FiniteField>(r: &mut SuiteReport, field: &F, trials: usize, fault: bool, rng: &mut ChaCha8Rng) {
    // omega has order Q - 1, so exponents are only distinguishable below Q - 1
    let max_d = 200.min(field.order() - 1) as u64;
    for trial in 0..trials {
        let d = rng.gen_range(0..=max_d);
        let t = rng.gen_range(1..=12);
        let h = random_uni(field, t, d, rng);
        let corrupt = fault && trial == 0;
        let oracle = FnOracle::new(1, |p: &[F::Elem]| {
            let v = h.eval(field, &p[0]);
            Ok(if corrupt && p[0] == field.one() { field.add(&v, &field.one()) } else { v })
        });
        let got = bot_exhaustive(field, &oracle, t, d);
        r.check(got.as_ref() == Ok(&h), || format!("F_{}^{}: {h:?} recovered as {got:?}", field.characteristic(), field.degree()));
        r.check(oracle.queries() == 2 * t as u64, || format!("{} queries for term bound {t}", oracle.queries()));
    }
}

fn univariate_suite(r: &mut SuiteReport, fault: bool) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    univariate_on(r, &PrimeField::new(101)?, 40, fault, &mut rng);
    univariate_on(r, &ExtensionField::new(2, 8)?, 20, false, &mut rng);
    univariate_on(r, &ExtensionField::new(101, 2)?, 20, false, &mut rng);
    Ok(())
}

fn backends_suite(r: &mut SuiteReport) -> Result<()> {
    let f = PrimeField::with_primitive(DEFAULT_Q, 29)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let d = rng.gen_range(0..=5000);
        let t = rng.gen_range(1..=10);
        let h = random_uni(&f, t, d, &mut rng);
        let oracle = FnOracle::new(1, |p: &[u64]| Ok(h.eval(&f, &p[0])));
        let a = bot_exhaustive(&f, &oracle, t, d);
        let b = bot_dlog(&f, &oracle, t, d);
        r.check(a.is_ok() && a == b, || format!("back-ends disagree on {h:?}"));
    }
    Ok(())
}

fn fixed_polys(count: usize, seed: u64) -> Result<(PrimeField, Vec<MultiPoly<u64>>)> {
    let f = PrimeField::new(DEFAULT_Q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys = (0..count)
        .map(|_| random_poly(&f, 3, 8, 16, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Ok((f, polys))
}

/// Terms whose residue `sum e_k s_k mod p` is shared with another term.
fn colliding(g: &MultiPoly<u64>, p: u64, s: &[u64]) -> Vec<bool> {
    let res: Vec<u64> = g
        .terms()
        .iter()
        .map(|t| crate::reduction::residue(&t.exps, s, p))
        .collect();
    res.iter()
        .enumerate()
        .map(|(i, x)| res.iter().enumerate().any(|(j, y)| i != j && x == y))
        .collect()
}

fn collision_rate_suite(r: &mut SuiteReport) -> Result<()> {
    let (_, polys) = fixed_polys(2, 5)?;
    let draws = 1000;
    let pool = prime_pool(8, 16);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for g in &polys {
        let mut hits = vec![0usize; g.len()];
        for _ in 0..draws {
            let p = pool[rng.gen_range(0..pool.len())];
            let s: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p)).collect();
            for (h, c) in hits.iter_mut().zip(colliding(g, p, &s)) {
                *h += usize::from(c);
            }
        }
        for h in hits {
            let rate = h as f64 / draws as f64;
            worst = worst.max(rate);
            r.check(rate <= 1.0 / 16.0 + 0.02, || format!("term collides with frequency {rate:.4}"));
        }
    }
    r.note = Some(format!("max per-term collision rate {worst:.4}"));
    Ok(())
}

fn selection_suite(r: &mut SuiteReport) -> Result<()> {
    let (f, polys) = fixed_polys(1, 7)?;
    let g = &polys[0];
    let t = g.len();
    let l = substitution_count(t, 0.1);
    let pool = prime_pool(t, 16);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let trials = 100;
    let mut good = 0;
    for _ in 0..trials {
        let pairs = sample_substitutions(&pool, 3, l, &mut rng);
        let mut best = (0, &pairs[0]);
        for pair in &pairs {
            let kept = g.kronecker_sub(&f, &pair.s)?.mod_cyclic(&f, pair.p).len();
            if kept > best.0 {
                best = (kept, pair);
            }
        }
        let free = t - collision_count(g, best.1.p, &best.1.s);
        good += usize::from(8 * free >= 5 * t);
    }
    let rate = good as f64 / trials as f64;
    r.check(rate >= 0.88, || format!("selected substitution ok in only {rate:.2} of trials"));
    r.note = Some(format!("selection success rate {rate:.2}"));
    Ok(())
}

fn containment_suite(r: &mut SuiteReport) -> Result<()> {
    let f = PrimeField::new(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=8);
        let t = (rng.gen_range(1..=6) as u128).min(monomial_count(n, d)) as usize;
        let g = random_poly(&f, n, t, d, &mut rng)?;
        for p in [2u64, 3, 5, 7] {
            let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let f_s = g.kronecker_sub(&f, &s)?;
            let out = ts_terms(&f, &f_s.mod_cyclic(&f, p), &f_s, &g.poly_subs(&f, &s, p)?, p, &s, d)?;
            for (term, collides) in g.terms().iter().zip(colliding(&g, p, &s)) {
                r.check(collides || out.terms().contains(term), || {
                    format!("non-colliding term {term:?} missing for p={p}, s={s:?}")
                });
            }
        }
    }
    Ok(())
}

fn collision_bound_suite(r: &mut SuiteReport) -> Result<()> {
    let f = PrimeField::new(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pool = prime_pool(6, 8);
    for _ in 0..100 {
        let g = random_poly(&f, 3, 6, 8, &mut rng)?;
        let pairs = sample_substitutions(&pool[..8], 3, 2, &mut rng);
        if pairs.len() < 2 {
            continue;
        }
        let kept = |i: usize| -> Result<usize> {
            Ok(g.kronecker_sub(&f, &pairs[i].s)?.mod_cyclic(&f, pairs[i].p).len())
        };
        let (u, v) = if kept(0)? >= kept(1)? { (0, 1) } else { (1, 0) };
        let cu = collision_count(&g, pairs[u].p, &pairs[u].s);
        let cv = collision_count(&g, pairs[v].p, &pairs[v].s);
        r.check(cu <= 2 * cv, || format!("collision counts {cu} > 2 * {cv}"));
    }
    Ok(())
}

fn reduction_suite(r: &mut SuiteReport) -> Result<()> {
    let trials = 10;
    let mut successes = 0;
    for trial in 0..trials {
        let seed = trial_seed(11, 0, trial);
        let (n, t, d) = (3, 6, 10);
        let truth = random_instance(DEFAULT_Q, n, t, d, seed)?;
        let settings = RunSettings {
            q: DEFAULT_Q,
            omega: Some(29),
            terms: t,
            degree: d,
            mu: 0.25,
            backend: Backend::Dlog,
            seed,
        };
        let out = run_hidden(&settings, n, &truth)?;
        successes += usize::from(out.result.as_ref().is_ok_and(|h| *h == truth));
        if out.result.is_ok() {
            let expected: usize = out.rounds.iter().map(|rs| (rs.pairs + n) * 2 * t).sum();
            r.check(out.queries == expected as u64, || {
                format!("{} queries, expected {expected}", out.queries)
            });
        }
    }
    r.check(4 * successes >= 3 * trials, || format!("recovered {successes}/{trials}"));
    r.note = Some(format!("recovered {successes}/{trials}"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_is_detected() {
        assert!(run_suite("univariate", false).unwrap().ok());
        assert!(!run_suite("univariate", true).unwrap().ok());
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", false).is_err());
    }
}
