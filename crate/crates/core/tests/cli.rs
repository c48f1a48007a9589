use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sparse-interp"));
    c.env_remove("SPARSE_INTERP_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("failed to start the binary")
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sparse-interp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Term lines without the header, sorted.
fn term_lines(text: &str) -> Vec<String> {
    let mut v: Vec<String> = text.lines().skip(1).map(str::to_string).collect();
    v.sort();
    v
}

#[test]
fn interpolates_a_file() {
    let path = temp_file("linear.txt", "# 2*x1 + 3*x2\n2 101 1\n2 1 0\n3 0 1\n");
    let out = run(&["interpolate", "--input", path.to_str().unwrap(), "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("2 101 1"));
    assert_eq!(term_lines(&text), ["2 1 0", "3 0 1"]);
    let stats = String::from_utf8_lossy(&out.stderr);
    assert!(stats.contains("queries:"), "{stats}");
}

#[test]
fn both_backends_recover_a_random_instance() {
    for backend in ["exhaustive", "dlog"] {
        let out = run(&[
            "interpolate", "--random", "3,6,8", "--q", "30000000001", "--backend", backend, "--seed", "5",
        ]);
        assert!(out.status.success(), "{backend}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(term_lines(&stdout(&out)).len(), 6);
    }
}

#[test]
fn zero_polynomial_prints_no_terms() {
    let path = temp_file("zero.txt", "3 101 1\n");
    let out = run(&["interpolate", "--input", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).trim(), "3 101 1");
}

#[test]
fn usage_errors_exit_with_one() {
    let path = temp_file("one.txt", "1 101 1\n1 1\n");
    let p = path.to_str().unwrap();
    for args in [
        vec!["interpolate", "--input", p, "--mu", "1.5"],
        vec!["interpolate", "--input", "/nonexistent/poly.txt"],
        vec!["interpolate", "--random", "2,3,4", "--q", "100"],
        vec!["interpolate", "--random", "2,3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn too_small_term_bound_is_an_algorithm_failure() {
    let path = temp_file("three.txt", "2 30000000001 1\n1 3 0\n2 0 3\n3 1 1\n");
    let out = run(&["interpolate", "--input", path.to_str().unwrap(), "--terms-bound", "1"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn seed_falls_back_to_the_environment() {
    let args = ["bench", "--vary", "n", "--values", "2", "--trials", "1", "-T", "3", "-D", "4", "--no-timing"];
    let explicit = run(&[&args[..], &["--seed", "11"]].concat());
    let from_env = bin().args(args).env("SPARSE_INTERP_SEED", "11").output().unwrap();
    assert!(explicit.status.success());
    assert_eq!(stdout(&explicit), stdout(&from_env));
    assert_ne!(stdout(&explicit), stdout(&run(&args)));
}

#[test]
fn bench_csv_is_reproducible() {
    let args = ["bench", "--vary", "T", "--values", "2,4", "--trials", "2", "--seed", "7", "--no-timing"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,T,D,q,backend,seed,trial,seconds,queries,success"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.len() == 10 && r[3] == "30000000001" && r[7] == "NA"));
    assert_eq!(rows[2][6], "mean");
    assert_eq!(rows[0][1], "2");
    assert_eq!(rows[3][1], "4");
}

#[test]
fn bench_reports_times() {
    let out = run(&["bench", "--vary", "D", "--values", "5", "--trials", "1", "-T", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert!(row[7].parse::<f64>().unwrap() >= 0.0);
    assert_eq!(row[9], "1");
}

#[test]
fn selftest_single_suite() {
    let out = run(&["selftest", "--suite", "collision-rate"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("PASS collision-rate"), "{text}");
    assert_eq!(text.lines().last(), Some("PASS"));
}

#[test]
fn selftest_catches_an_injected_fault() {
    let out = run(&["selftest", "--suite", "univariate", "--inject-fault"]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("FAIL univariate"));
}

#[test]
fn selftest_rejects_unknown_suite() {
    let out = run(&["selftest", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}
