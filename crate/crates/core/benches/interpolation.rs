use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sparse_interp::bench::{random_instance, run_hidden, RunSettings, DEFAULT_Q};
use sparse_interp::bot::Backend;

fn settings(terms: usize, seed: u64) -> RunSettings {
    RunSettings {
        q: DEFAULT_Q,
        omega: Some(29),
        terms,
        degree: 30,
        mu: 0.25,
        backend: Backend::Dlog,
        seed,
    }
}

// Same workload in a one-thread pool and in the global pool. Built without
// the `parallel` feature both run sequentially.
fn sequential_vs_parallel(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut group = c.benchmark_group("mul_poly_si");
    group.sample_size(10);
    for terms in [5usize, 10, 20] {
        let n = 5;
        let truth = random_instance(DEFAULT_Q, n, terms, 30, 7).unwrap();
        let s = settings(terms, 7);
        group.bench_with_input(BenchmarkId::new("sequential", terms), &truth, |b, truth| {
            b.iter(|| single.install(|| run_hidden(black_box(&s), n, truth).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("parallel", terms), &truth, |b, truth| {
            b.iter(|| run_hidden(black_box(&s), n, truth).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sequential_vs_parallel);
criterion_main!(benches);
