use criterion::{criterion_group, criterion_main, Criterion};
use prym_core::{exact_min, lemma3_bound, lemma4_max, oracle_extrema, PolytopeProblem};
use std::hint::black_box;

fn bench_bounds(c: &mut Criterion) {
    let p = PolytopeProblem::new(2.5, 4, 1.25).unwrap();
    c.bench_function("lemma3_bound", |b| b.iter(|| lemma3_bound(black_box(&p))));
    c.bench_function("lemma4_max", |b| b.iter(|| lemma4_max(black_box(&p))));
    c.bench_function("exact_min_gamma4", |b| {
        b.iter(|| exact_min(black_box(&p)).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let coarse = PolytopeProblem::new(2.0, 3, 0.5).unwrap();
    let fine = PolytopeProblem::new(2.0, 4, 0.5).unwrap();
    c.bench_function("oracle_gamma3_res_1_64", |b| {
        b.iter(|| oracle_extrema(black_box(&coarse), 1.0 / 64.0).unwrap())
    });
    let mut slow = c.benchmark_group("oracle_slow");
    slow.sample_size(10);
    slow.bench_function("oracle_gamma4_res_1_64", |b| {
        b.iter(|| oracle_extrema(black_box(&fine), 1.0 / 64.0).unwrap())
    });
    slow.finish();
}

criterion_group!(benches, bench_bounds, bench_oracle);
criterion_main!(benches);
