use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use prym_bench::sample_cover;
use prym_cli::{analyze_cover, enumerate_covers, VerifyDepth};
use prym_core::{
    count_cover_points, cover_count_series, l_from_counts, prym_l, DEFAULT_BUDGET,
};
use std::hint::black_box;

fn bench_counting(c: &mut Criterion) {
    let cov3 = sample_cover(3);
    let cov5 = sample_cover(5);
    c.bench_function("count_cover_points_f3_n3", |b| {
        b.iter(|| count_cover_points(black_box(&cov3), 3, DEFAULT_BUDGET).unwrap())
    });
    c.bench_function("count_cover_points_f5_n3", |b| {
        b.iter(|| count_cover_points(black_box(&cov5), 3, DEFAULT_BUDGET).unwrap())
    });
    c.bench_function("count_cover_points_f3_n6", |b| {
        b.iter(|| count_cover_points(black_box(&cov3), 6, DEFAULT_BUDGET).unwrap())
    });
}

fn bench_l_fit(c: &mut Criterion) {
    let cov = sample_cover(5);
    let series = cover_count_series(&cov, cov.genus_y(), DEFAULT_BUDGET).unwrap();
    let x_series =
        prym_core::curve_count_series(cov.base(), cov.genus_x(), DEFAULT_BUDGET).unwrap();
    let l_y = l_from_counts(&series, cov.genus_y()).unwrap();
    let l_x = l_from_counts(&x_series, cov.genus_x()).unwrap();
    c.bench_function("l_from_counts_gy3", |b| {
        b.iter(|| l_from_counts(black_box(&series), 3).unwrap())
    });
    c.bench_function("prym_l_g2", |b| {
        b.iter(|| prym_l(black_box(&l_y), black_box(&l_x)).unwrap())
    });
}

fn bench_pipeline(c: &mut Criterion) {
    let cov = sample_cover(5);
    c.bench_function("analyze_cover_standard_f5", |b| {
        b.iter(|| analyze_cover(black_box(&cov), DEFAULT_BUDGET, VerifyDepth::Standard).unwrap())
    });
    c.bench_function("analyze_cover_full_f5", |b| {
        b.iter(|| analyze_cover(black_box(&cov), DEFAULT_BUDGET, VerifyDepth::Full).unwrap())
    });
    c.bench_function("enumerate_covers_f3_4_2", |b| {
        b.iter_batched(
            || (),
            |_| enumerate_covers(3, 4, 2, usize::MAX, 0).unwrap().0.len(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench_counting, bench_l_fit, bench_pipeline);
criterion_main!(benches);
