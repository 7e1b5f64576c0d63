use std::hint::black_box;

use asmrel::coeffs::extended_table;
use asmrel::relations::{build_conjecture_system, BoundaryMode};
use asmrel::shiftops::{alpha_expanded_operator, alpha_shift_sum, vandermonde_quotient};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn alpha_polynomial(c: &mut Criterion) {
    let mut g = c.benchmark_group("alpha_polynomial");
    g.sample_size(10);
    for n in [3, 4, 5] {
        let op = alpha_expanded_operator(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| op.apply(&vandermonde_quotient(black_box(n))).unwrap())
        });
    }
    g.finish();
}

fn alpha_values(c: &mut Criterion) {
    let mut g = c.benchmark_group("alpha_shift_sum");
    for n in [4, 6, 7] {
        let k: Vec<i64> = (1..=n as i64).map(|x| 2 * x).collect();
        g.bench_with_input(BenchmarkId::from_parameter(n), &k, |b, k| {
            b.iter(|| alpha_shift_sum(black_box(k)).unwrap())
        });
    }
    g.finish();
}

fn uniqueness_rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("uniqueness_rank");
    for (n, d) in [(4, 2), (5, 2), (3, 3)] {
        let prev = extended_table(n - 1, 0, d - 1).unwrap().to_count_table();
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_d{d}")),
            &prev,
            |b, prev| {
                b.iter(|| {
                    build_conjecture_system(n, d, prev, BoundaryMode::Zero)
                        .unwrap()
                        .rank()
                })
            },
        );
    }
    g.finish();
}

criterion_group!(benches, alpha_polynomial, alpha_values, uniqueness_rank);
criterion_main!(benches);
