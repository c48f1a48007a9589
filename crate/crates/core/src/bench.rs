//! End-to-end runs on hidden polynomials and the CSV benchmark harness.
//!
//! The ground truth stays on the harness side; the algorithm sees only the
//! evaluation oracle.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bot::{choose_extension, Backend};
use crate::error::{Error, Result};
use crate::field::{ExtensionField, FiniteField, ModQ, PrimeField};
use crate::oracle::{BlackBox, PolyOracle};
use crate::poly::{random_poly, MultiPoly};
use crate::reduction::{max_univariate_degree, mul_poly_si, ReductionConfig, RoundStats};

/// Prime used by default for benchmarks.
pub const DEFAULT_Q: u64 = 30_000_000_001;

pub const CSV_HEADER: &str = "n,T,D,q,backend,seed,trial,seconds,queries,success";

/// A polynomial with base-field coefficients: `(coeff, exponents)` terms.
pub type BaseTerms = Vec<(u64, Vec<u64>)>;

/// Settings for one end-to-end interpolation.
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub q: u64,
    /// Primitive element of `F_q`; only meaningful when no extension is
    /// needed. Defaults to the smallest one.
    pub omega: Option<u64>,
    pub terms: usize,
    pub degree: u64,
    pub mu: f64,
    pub backend: Backend,
    pub seed: u64,
}

/// What one run produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Recovered polynomial, or the failure.
    pub result: Result<BaseTerms>,
    pub queries: u64,
    pub seconds: f64,
    pub rounds: Vec<RoundStats>,
    /// Extension degree of the working field.
    pub field_degree: usize,
}

/// Interpolates the polynomial with `n` variables and the given terms,
/// seen only through an evaluation oracle. Works over `F_q`, or over the
/// smallest extension large enough for every univariate degree bound.
/// Errors here are setup errors; algorithm failures land in
/// [`RunOutcome::result`].
pub fn run_hidden(settings: &RunSettings, n: usize, truth: &[(u64, Vec<u64>)]) -> Result<RunOutcome> {
    let config = ReductionConfig::new(settings.terms, settings.degree, settings.mu)?;
    let m = choose_extension(settings.q, max_univariate_degree(settings.terms, settings.degree)?);
    if m == 1 {
        let field = match settings.omega {
            Some(w) => PrimeField::with_primitive(settings.q, w)?,
            None => PrimeField::new(settings.q)?,
        };
        run_over(field, n, truth, &config, settings)
    } else {
        if settings.omega.is_some() {
            return Err(Error::InvalidInput(format!(
                "q = {} is too small for these bounds; the run needs F_q^{m}, so --omega cannot be used",
                settings.q
            )));
        }
        run_over(ExtensionField::new(settings.q, m)?, n, truth, &config, settings)
    }
}

fn run_over<F: FiniteField + 'static>(
    field: F,
    n: usize,
    truth: &[(u64, Vec<u64>)],
    config: &ReductionConfig,
    settings: &RunSettings,
) -> Result<RunOutcome> {
    let hidden = MultiPoly::from_terms(&field, n, truth.iter().map(|(c, e)| (field.from_base(*c), e.clone())))?;
    let field_degree = field.degree();
    let oracle = PolyOracle::new(field.clone(), hidden);
    let interp = settings.backend.interpolator::<F>();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let start = Instant::now();
    let run = mul_poly_si(&field, &oracle, config, interp.as_ref(), &mut rng);
    let seconds = start.elapsed().as_secs_f64();
    let (result, rounds) = match run {
        Ok(out) => {
            let terms = out
                .poly
                .terms()
                .iter()
                .map(|t| Ok((field.to_base(&t.coeff).ok_or(Error::NonBaseCoefficient)?, t.exps.clone())))
                .collect::<Result<BaseTerms>>();
            (terms, out.rounds)
        }
        Err(e) => (Err(e), Vec::new()),
    };
    if let Err(e) = &result {
        if !e.is_algorithm_failure() {
            return Err(e.clone());
        }
    }
    Ok(RunOutcome {
        result,
        queries: oracle.queries(),
        seconds,
        rounds,
        field_degree,
    })
}

/// The random instance used by a trial with the given seed: `t` distinct
/// monomials of total degree at most `d` in `n` variables, with nonzero
/// coefficients from `F_q`.
pub fn random_instance(q: u64, n: usize, t: usize, d: u64, seed: u64) -> Result<BaseTerms> {
    let base = ModQ::new(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poly = random_poly(&base, n, t, d, &mut rng)?;
    Ok(poly.terms().iter().map(|t| (t.coeff, t.exps.clone())).collect())
}

/// Per-trial seed derived from the run seed, the parameter point and the
/// trial index.
pub fn trial_seed(seed: u64, point: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(seed ^ (point as u64).rotate_left(32)) ^ trial as u64)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub terms: usize,
    pub degree: u64,
    pub q: u64,
    pub backend: Backend,
    pub seed: u64,
    pub trial: usize,
    pub seconds: f64,
    pub queries: u64,
    pub success: bool,
}

/// Runs one trial: a fresh random instance with `terms` monomials of
/// degree at most `degree`, interpolated using its actual term count and
/// total degree as bounds, compared against the ground truth. The record
/// keeps the nominal parameters.
#[allow(clippy::too_many_arguments)]
pub fn run_trial(
    q: u64,
    omega: Option<u64>,
    n: usize,
    terms: usize,
    degree: u64,
    mu: f64,
    backend: Backend,
    seed: u64,
    trial: usize,
) -> Result<BenchRecord> {
    let truth = random_instance(q, n, terms, degree, seed)?;
    let settings = RunSettings {
        q,
        omega,
        terms: truth.len(),
        degree: truth.iter().map(|(_, e)| e.iter().sum::<u64>()).max().unwrap_or(0),
        mu,
        backend,
        seed,
    };
    let outcome = run_hidden(&settings, n, &truth)?;
    let success = matches!(&outcome.result, Ok(found) if *found == truth);
    Ok(BenchRecord {
        n,
        terms,
        degree,
        q,
        backend,
        seed,
        trial,
        seconds: outcome.seconds,
        queries: outcome.queries,
        success,
    })
}

/// The parameter swept by a benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    N,
    T,
    D,
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" => Ok(Param::N),
            "T" | "t" => Ok(Param::T),
            "D" | "d" => Ok(Param::D),
            other => Err(Error::InvalidInput(format!("cannot vary {other:?}; use n, T or D"))),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::N => "n",
            Param::T => "T",
            Param::D => "D",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub vary: Param,
    pub values: Vec<u64>,
    /// Fixed values of the parameters not being varied.
    pub n: usize,
    pub terms: usize,
    pub degree: u64,
    pub trials: usize,
    pub q: u64,
    pub omega: Option<u64>,
    pub mu: f64,
    pub backend: Backend,
    pub seed: u64,
    /// Print `NA` instead of wall times so output is reproducible.
    pub timing: bool,
}

impl BenchConfig {
    /// `(n, T, D)` at each point of the sweep.
    pub fn points(&self) -> Vec<(usize, usize, u64)> {
        self.values
            .iter()
            .map(|&v| match self.vary {
                Param::N => (v as usize, self.terms, self.degree),
                Param::T => (self.n, v as usize, self.degree),
                Param::D => (self.n, self.terms, v),
            })
            .collect()
    }
}

/// Runs the sweep, writing CSV rows to `out` as each point finishes: one
/// row per trial followed by a `mean` row. Returns every trial record.
pub fn run_bench<W: Write>(config: &BenchConfig, out: &mut W) -> anyhow::Result<Vec<BenchRecord>> {
    writeln!(out, "{CSV_HEADER}")?;
    let mut all = Vec::new();
    for (point, (n, t, d)) in config.points().into_iter().enumerate() {
        let mut records = Vec::with_capacity(config.trials);
        for trial in 0..config.trials {
            let seed = trial_seed(config.seed, point, trial);
            let r = run_trial(config.q, config.omega, n, t, d, config.mu, config.backend, seed, trial)?;
            writeln!(out, "{}", format_row(&r, config.timing))?;
            records.push(r);
        }
        if !records.is_empty() {
            writeln!(out, "{}", format_mean(&records, config.seed, config.timing))?;
        }
        out.flush()?;
        all.extend(records);
    }
    Ok(all)
}

fn seconds_field(seconds: f64, timing: bool) -> String {
    if timing {
        format!("{seconds:.6}")
    } else {
        "NA".into()
    }
}

pub fn format_row(r: &BenchRecord, timing: bool) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.n,
        r.terms,
        r.degree,
        r.q,
        r.backend,
        r.seed,
        r.trial,
        seconds_field(r.seconds, timing),
        r.queries,
        u8::from(r.success)
    )
}

fn format_mean(records: &[BenchRecord], seed: u64, timing: bool) -> String {
    let k = records.len() as f64;
    let r = &records[0];
    let seconds = records.iter().map(|r| r.seconds).sum::<f64>() / k;
    let queries = records.iter().map(|r| r.queries as f64).sum::<f64>() / k;
    let success = records.iter().filter(|r| r.success).count() as f64 / k;
    format!(
        "{},{},{},{},{},{},mean,{},{:.1},{:.4}",
        r.n,
        r.terms,
        r.degree,
        r.q,
        r.backend,
        seed,
        seconds_field(seconds, timing),
        queries,
        success
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_recovers_instance() {
        let r = run_trial(DEFAULT_Q, Some(29), 3, 5, 8, 0.25, Backend::Dlog, 42, 0).unwrap();
        assert!(r.success);
        assert!(r.queries > 0);
    }

    #[test]
    fn small_q_uses_an_extension() {
        let truth = vec![(3, vec![0, 1]), (2, vec![1, 0])];
        // the single pool prime 37 gives degree bounds up to 73 > 31
        let settings = RunSettings {
            q: 31,
            omega: None,
            terms: 2,
            degree: 1,
            mu: 0.25,
            backend: Backend::Exhaustive,
            seed: 1,
        };
        let out = run_hidden(&settings, 2, &truth).unwrap();
        assert_eq!(out.field_degree, 2);
        assert_eq!(out.result.unwrap(), truth);
        let bad = RunSettings { omega: Some(2), ..settings };
        assert!(run_hidden(&bad, 2, &truth).is_err());
    }

    #[test]
    fn csv_is_reproducible_without_timing() {
        let config = BenchConfig {
            vary: Param::T,
            values: vec![2, 3],
            n: 2,
            terms: 0,
            degree: 5,
            trials: 2,
            q: DEFAULT_Q,
            omega: None,
            mu: 0.25,
            backend: Backend::Dlog,
            seed: 7,
            timing: false,
        };
        let mut a = Vec::new();
        let mut b = Vec::new();
        run_bench(&config, &mut a).unwrap();
        run_bench(&config, &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 2 * 3);
        assert!(lines[3].contains(",mean,NA,"));
    }

    #[test]
    fn seeds_differ_across_points_and_trials() {
        let s: std::collections::HashSet<u64> =
            (0..4).flat_map(|p| (0..4).map(move |t| trial_seed(7, p, t))).collect();
        assert_eq!(s.len(), 16);
    }
}
