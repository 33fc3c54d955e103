use std::hint::black_box;

use bqd_core::catalog::{instantiate, CaseId, CaseSpec};
use bqd_core::hecke::build_context;
use bqd_core::linalg::{rank, Mat};
use bqd_core::par;
use bqd_core::scalars::{Field, NumScalar, Rational};
use bqd_core::shape::Sweep;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn threads() -> Vec<(&'static str, usize)> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    vec![("sequential", 1), ("parallel", all)]
}

fn pseudo_random(rows: usize, cols: usize) -> Mat<NumScalar> {
    let mut state = 0x2545_f491_u64;
    let data = (0..rows * cols)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            NumScalar::from_int(((state >> 33) % 7) as i64 - 3)
        })
        .collect();
    Mat::from_vec(rows, cols, data)
}

fn bench_matmul(c: &mut Criterion) {
    let a = pseudo_random(81, 81);
    let mut g = c.benchmark_group("matmul 81x81");
    for (label, n) in threads() {
        g.bench_function(BenchmarkId::from_parameter(label), |b| b.iter(|| par::with_threads(n, || black_box(a.mul(&a)))));
    }
    g.finish();
}

fn bench_rank(c: &mut Criterion) {
    let a = pseudo_random(48, 60);
    let mut g = c.benchmark_group("rank 48x60");
    g.sample_size(10);
    for (label, n) in threads() {
        g.bench_function(BenchmarkId::from_parameter(label), |b| b.iter(|| par::with_threads(n, || black_box(rank(&a)))));
    }
    g.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let bqd = instantiate(&CaseSpec::<Rational>::default_for(CaseId::IIIa)).unwrap();
    let mut g = c.benchmark_group("M sweep k+l<=5");
    g.sample_size(10);
    for (label, n) in threads() {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| par::with_threads(n, || black_box(Sweep::m(&bqd).up_to(5))))
        });
    }
    g.finish();
}

fn bench_hecke(c: &mut Criterion) {
    let bqd = instantiate(&CaseSpec::<Rational>::default_for(CaseId::IIa)).unwrap();
    let mut g = c.benchmark_group("Hecke context (3,1)");
    g.sample_size(10);
    for (label, n) in threads() {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| par::with_threads(n, || black_box(build_context(&bqd, 3, 1).unwrap().symmetrizer(bqd_core::hecke::Side::V))))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_matmul, bench_rank, bench_sweep, bench_hecke);
criterion_main!(benches);
