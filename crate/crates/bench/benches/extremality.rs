use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use elliptope::{check_extreme, eig_selfadjoint, gram_factor, Tolerances};
use elliptope_bench::bench_inputs;

fn bench_check_extreme(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("check_extreme");
    for n in [9, 16, 32] {
        for (name, m) in bench_inputs(n) {
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| check_extreme(black_box(m), &tol).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_factorization(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("factorization");
    for n in [16, 64] {
        let (_, m) = bench_inputs(n).pop().unwrap();
        group.bench_with_input(BenchmarkId::new("eig_selfadjoint", n), &m, |b, m| {
            b.iter(|| eig_selfadjoint(black_box(m.matrix()), &tol).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("gram_factor", n), &m, |b, m| {
            b.iter(|| gram_factor(black_box(m), &tol).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_check_extreme, bench_factorization);
criterion_main!(benches);
