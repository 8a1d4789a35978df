use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use coinwalk_core::crw::{crw_distribution, CrwParams};
use coinwalk_core::oracle::{enumerate_paths_1d, sample_walk, WalkModel};
use coinwalk_core::qrw::{qrw1d_distribution, qrw2d_distribution};
use coinwalk_core::qw::{
    coin_reduced_direct, covariance_integral, qw_distribution, CoinBasis,
};
use coinwalk_core::types::{hadamard2, CoinState2, CoinState4, ETA_PAIRS};

fn biased_coin() -> CoinState2 {
    CoinState2::new(0.5, 0.5, Complex64::new(0.1, 0.0)).unwrap()
}

fn pattern_h() -> CoinState4 {
    let mut eta = [Complex64::new(0.0, 0.0); 6];
    for (i, j, v) in [(0usize, 1usize, -0.1f64), (2, 3, 0.1), (1, 2, 0.2)] {
        let idx = ETA_PAIRS.iter().position(|&p| p == (i, j)).unwrap();
        eta[idx] = Complex64::new(v, 0.0);
    }
    CoinState4::new([0.25; 4], eta).unwrap()
}

fn bench_distributions(c: &mut Criterion) {
    let coin = biased_coin();
    let h = hadamard2();
    let mut group = c.benchmark_group("distribution");
    for &n in &[100usize, 1_000, 10_000] {
        group.bench_with_input(BenchmarkId::new("crw", n), &n, |b, &n| {
            let params = CrwParams::symmetric(n);
            b.iter(|| crw_distribution(black_box(&params)))
        });
        group.bench_with_input(BenchmarkId::new("qrw1d", n), &n, |b, &n| {
            b.iter(|| qrw1d_distribution(black_box(&coin), &h, n).unwrap())
        });
    }
    group.bench_function("qrw2d/40", |b| {
        let state = pattern_h();
        b.iter(|| qrw2d_distribution(black_box(&state), 40).unwrap())
    });
    group.bench_function("qw/200", |b| {
        let mixed = CoinState2::maximally_mixed();
        b.iter(|| qw_distribution(black_box(&mixed), 200))
    });
    group.finish();
}

fn bench_correlation(c: &mut Criterion) {
    let mixed = CoinState2::maximally_mixed();
    let mut group = c.benchmark_group("correlation");
    group.bench_function("covariance_integral/200", |b| {
        b.iter(|| covariance_integral(black_box(&mixed), 200).unwrap())
    });
    group.bench_function("coin_reduced_direct/64", |b| {
        b.iter(|| coin_reduced_direct(black_box(CoinBasis::Plus), 64))
    });
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    group.bench_function("enumerate_1d/16", |b| {
        b.iter(|| enumerate_paths_1d(black_box(0.6), 0.4, 16).unwrap())
    });
    group.bench_function("sample_qrw1d/100x100k", |b| {
        let model = WalkModel::Qrw1d {
            state: biased_coin(),
            coin: hadamard2(),
        };
        b.iter(|| sample_walk(black_box(&model), 100, 100_000, 42).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_distributions, bench_correlation, bench_oracle);
criterion_main!(benches);
