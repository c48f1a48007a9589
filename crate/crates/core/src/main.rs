use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use sparse_interp::bench::{self, random_instance, run_bench, run_hidden, BenchConfig, Param, RunSettings};
use sparse_interp::bot::Backend;
use sparse_interp::poly::text::PolyFile;
use sparse_interp::selftest;
use sparse_interp::Error;

const SEED_VAR: &str = "SPARSE_INTERP_SEED";

#[derive(Parser)]
#[command(name = "sparse-interp", version, about = "Sparse polynomial interpolation over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recover a polynomial from its evaluations.
    Interpolate(InterpolateArgs),
    /// Time random instances and print CSV.
    Bench(BenchArgs),
    /// Run the built-in property suites.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Common {
    /// Primitive element of F_q (defaults to the smallest one)
    #[arg(long)]
    omega: Option<u64>,
    /// Failure probability, in (0, 1)
    #[arg(long, default_value_t = 0.25)]
    mu: f64,
    /// RNG seed; falls back to $SPARSE_INTERP_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Univariate back-end: exhaustive or dlog
    #[arg(long, default_value = "dlog")]
    backend: Backend,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "random"])))]
struct InterpolateArgs {
    /// Polynomial file to hide behind the oracle
    #[arg(long)]
    input: Option<PathBuf>,
    /// Random instance `n,t,D`: t monomials in n variables of degree <= D
    #[arg(long, value_name = "n,t,D")]
    random: Option<String>,
    /// Field characteristic; required with --random, checked against the file otherwise
    #[arg(long)]
    q: Option<u64>,
    /// Term bound (defaults to the actual number of terms, at least 1)
    #[arg(long)]
    terms_bound: Option<usize>,
    /// Degree bound (defaults to the actual total degree)
    #[arg(long)]
    degree_bound: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BenchArgs {
    /// Parameter to sweep: n, T or D
    #[arg(long)]
    vary: Param,
    /// Comma-separated values of the swept parameter
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<u64>,
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Number of terms when T is fixed
    #[arg(long = "terms", short = 'T', default_value_t = 20)]
    terms: usize,
    /// Degree when D is fixed
    #[arg(long = "degree", short = 'D', default_value_t = 30)]
    degree: u64,
    /// Random polynomials per point
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = bench::DEFAULT_Q)]
    q: u64,
    /// Print NA for times so the output is reproducible
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only the named suite
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Interpolate(args) => interpolate(args),
        Command::Bench(args) => bench_cmd(args),
        Command::Selftest(args) => selftest_cmd(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let failed = e.downcast_ref::<Error>().is_some_and(Error::is_algorithm_failure);
            ExitCode::from(if failed { 2 } else { 1 })
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> anyhow::Result<u64> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{SEED_VAR}={v:?} is not an integer")),
        Err(_) => Ok(0),
    }
}

fn check_mu(mu: f64) -> anyhow::Result<()> {
    if mu > 0.0 && mu < 1.0 {
        Ok(())
    } else {
        bail!("--mu must lie strictly between 0 and 1, got {mu}")
    }
}

fn interpolate(args: InterpolateArgs) -> anyhow::Result<ExitCode> {
    check_mu(args.common.mu)?;
    let seed = resolve_seed(args.common.seed)?;
    let (n, q, truth) = if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = PolyFile::parse(&text)?;
        if !file.is_base_field() {
            bail!("coefficients must lie in F_{}; extension coefficients are not supported as input", file.q);
        }
        if let Some(q) = args.q {
            if q != file.q {
                bail!("--q {q} disagrees with the file header q = {}", file.q);
            }
        }
        let base = sparse_interp::field::ModQ::new(file.q)?;
        let poly = file.to_poly(&base)?;
        let terms = poly.terms().iter().map(|t| (t.coeff, t.exps.clone())).collect();
        (file.n, file.q, terms)
    } else {
        let shape = args.random.as_deref().expect("clap enforces a source");
        let parts: Vec<u64> = shape
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| anyhow!("--random expects n,t,D, got {shape:?}"))?;
        let [n, t, d] = parts[..] else {
            bail!("--random expects n,t,D, got {shape:?}");
        };
        let q = args.q.ok_or_else(|| anyhow!("--random needs --q"))?;
        (n as usize, q, random_instance(q, n as usize, t as usize, d, seed)?)
    };

    let settings = RunSettings {
        q,
        omega: args.common.omega,
        terms: args.terms_bound.unwrap_or(truth.len().max(1)),
        degree: args
            .degree_bound
            .unwrap_or_else(|| truth.iter().map(|(_, e)| e.iter().sum::<u64>()).max().unwrap_or(0)),
        mu: args.common.mu,
        backend: args.common.backend,
        seed,
    };
    let outcome = run_hidden(&settings, n, &truth)?;
    eprintln!("field: F_{}^{}", q, outcome.field_degree);
    eprintln!("bounds: T = {}, D = {}", settings.terms, settings.degree);
    eprintln!("queries: {}", outcome.queries);
    eprintln!("rounds: {}", outcome.rounds.len());
    eprintln!("seconds: {:.6}", outcome.seconds);
    let found = outcome.result?;
    let file = PolyFile {
        n,
        q,
        m: 1,
        modulus: None,
        terms: found.iter().map(|(c, e)| (vec![*c], e.clone())).collect(),
    };
    print!("{file}");
    let exact = found == truth;
    eprintln!("matches input: {}", if exact { "yes" } else { "no" });
    Ok(if exact { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn bench_cmd(args: BenchArgs) -> anyhow::Result<ExitCode> {
    check_mu(args.common.mu)?;
    let config = BenchConfig {
        vary: args.vary,
        values: args.values,
        n: args.n,
        terms: args.terms,
        degree: args.degree,
        trials: args.trials,
        q: args.q,
        omega: args.common.omega,
        mu: args.common.mu,
        backend: args.common.backend,
        seed: resolve_seed(args.common.seed)?,
        timing: !args.no_timing,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    run_bench(&config, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn selftest_cmd(args: SelftestArgs) -> anyhow::Result<ExitCode> {
    let names: Vec<&str> = match &args.suite {
        Some(s) => vec![s.as_str()],
        None => selftest::SUITES.to_vec(),
    };
    let mut all_ok = true;
    for name in names {
        let report = selftest::run_suite(name, args.inject_fault)?;
        let status = if report.ok() { "PASS" } else { "FAIL" };
        let note = report.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        println!("{status} {name}: {} passed, {} failed{note}", report.passed, report.failed);
        for f in report.failures.iter().take(5) {
            println!("    {f}");
        }
        all_ok &= report.ok();
    }
    println!("{}", if all_ok { "PASS" } else { "FAIL" });
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
