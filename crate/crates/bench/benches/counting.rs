use std::hint::black_box;

use asmrel::enumerate::{count_partial, enumerate_asms};
use asmrel_bench::spread_spec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_asms");
    g.sample_size(10);
    for n in [4, 5, 6] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_asms(black_box(n)).count())
        });
    }
    g.finish();
}

fn partial_counts(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_partial");
    for (n, bottom, top) in [(5, 1, 2), (6, 1, 2), (7, 2, 1), (8, 1, 2)] {
        let spec = spread_spec(n, bottom, top);
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_c{bottom}_d{top}")),
            &spec,
            |b, s| b.iter(|| count_partial(black_box(s)).unwrap()),
        );
    }
    g.finish();
}

criterion_group!(benches, enumeration, partial_counts);
criterion_main!(benches);
