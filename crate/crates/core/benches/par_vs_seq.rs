//! Enumeration throughput: rayon data-parallel core against the sequential
//! path.
//!
//! With the default `parallel` feature the same workload runs once inside a
//! single-thread pool (scheduling overhead but no parallelism) and once on
//! the default pool. Building the bench with `--no-default-features`
//! measures the plain sequential fallback instead.

use criterion::{criterion_group, criterion_main, Criterion};
use rsdl_core::code::{deep_hole_census, RSCode};
use rsdl_core::counts::root_histogram;
use rsdl_core::field::FiniteField;
use rsdl_core::poly::Poly;

const BUDGET: u64 = 1 << 40;

fn histogram_workload() -> u64 {
    let field = FiniteField::with_q(9).unwrap();
    let f = Poly::parse("x^6 + 2*x^5", &field).unwrap();
    let hist = root_histogram(&f, 5, BUDGET).unwrap();
    hist.iter().sum()
}

fn census_workload() -> u64 {
    let field = FiniteField::with_q(4).unwrap();
    let code = RSCode::standard(&field, 2).unwrap();
    deep_hole_census(&code, BUDGET).unwrap().deep_hole_count
}

#[cfg(feature = "parallel")]
fn bench_both(c: &mut Criterion, name: &str, work: fn() -> u64) {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let mut group = c.benchmark_group(name);
    group.bench_function("seq_1thread", |b| {
        b.iter(|| single.install(|| std::hint::black_box(work())))
    });
    group.bench_function("par_default", |b| b.iter(|| std::hint::black_box(work())));
    group.finish();
}

#[cfg(not(feature = "parallel"))]
fn bench_both(c: &mut Criterion, name: &str, work: fn() -> u64) {
    let mut group = c.benchmark_group(name);
    group.bench_function("seq_fallback", |b| b.iter(|| std::hint::black_box(work())));
    group.finish();
}

fn benches(c: &mut Criterion) {
    bench_both(c, "root_histogram_q9_k5", histogram_workload);
    bench_both(c, "deep_hole_census_q4_k2", census_workload);
}

criterion_group!(benches_group, benches);
criterion_main!(benches_group);
