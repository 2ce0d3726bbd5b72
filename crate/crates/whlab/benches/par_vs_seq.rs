//! Parallel vs sequential timings for the data-parallel certification loops.
//!
//! With the default `parallel` feature the library fans work out on the
//! ambient rayon pool, so the comparison here runs each workload once inside
//! a single-thread pool and once on the default pool. Building the crate
//! with `--no-default-features` removes the rayon path entirely; rerunning
//! this bench then shows the true sequential baseline in both groups.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use whlab::suites::{mub_suite, twomode_suite};
use whlab::{AlgebraParams, FockSpace};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
}

fn bench_mub(c: &mut Criterion) {
    let mut group = c.benchmark_group("mub_complete_set");
    group.sample_size(10);
    for d in [31usize, 61] {
        group.bench_with_input(BenchmarkId::new("seq1", d), &d, |b, &d| {
            let p = pool(1);
            b.iter(|| p.install(|| mub_suite(d, 1e-10).unwrap()));
        });
        group.bench_with_input(BenchmarkId::new("par", d), &d, |b, &d| {
            b.iter(|| mub_suite(d, 1e-10).unwrap());
        });
    }
    group.finish();
}

fn bench_closure_theta(c: &mut Criterion) {
    let params = AlgebraParams::new(vec![0.5], 1.3).unwrap();
    let mut group = c.benchmark_group("closure_theta");
    group.sample_size(20);
    for s in [32usize, 64] {
        let space = FockSpace::truncated(&params, s).unwrap();
        let grid = 8 * s;
        group.bench_with_input(BenchmarkId::new("seq1", s), &s, |b, _| {
            let p = pool(1);
            b.iter(|| p.install(|| whlab::phase::closure_theta(&params, &space, grid).unwrap()));
        });
        group.bench_with_input(BenchmarkId::new("par", s), &s, |b, _| {
            b.iter(|| whlab::phase::closure_theta(&params, &space, grid).unwrap());
        });
    }
    group.finish();
}

fn bench_twomode(c: &mut Criterion) {
    let mut group = c.benchmark_group("twomode_suite");
    group.sample_size(10);
    for jmax in [12usize, 16] {
        group.bench_with_input(BenchmarkId::new("seq1", jmax), &jmax, |b, &jmax| {
            let p = pool(1);
            b.iter(|| p.install(|| twomode_suite(0.5, jmax, 1e-10).unwrap()));
        });
        group.bench_with_input(BenchmarkId::new("par", jmax), &jmax, |b, &jmax| {
            b.iter(|| twomode_suite(0.5, jmax, 1e-10).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_mub, bench_closure_theta, bench_twomode);
criterion_main!(benches);
