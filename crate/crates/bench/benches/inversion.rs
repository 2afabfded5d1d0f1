use std::hint::black_box;

use convinv_core::gaussian::{blur, naive_deblur, reference_bump, DeblurMode};
use convinv_core::lateral::{binomial_kernel, reconstruct, symmetric_binomial_inverse};
use convinv_core::neumann::{invert_three_point, neumann_inverse};
use convinv_core::{AtomicMeasure, LatticeSignal, Mode, NeumannConfig, Scalar};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn dense_measure(n: i64, mode: Mode) -> AtomicMeasure {
    let atoms: Vec<(i64, i64)> = (-n..=n).map(|i| (i, (i * 7) % 11 - 5)).collect();
    AtomicMeasure::from_integers_1d(mode, &atoms)
}

fn convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolve");
    for mode in [Mode::Exact, Mode::Float] {
        let a = dense_measure(64, mode);
        let b = dense_measure(64, mode);
        group.bench_function(BenchmarkId::new("129x129", mode), |bench| {
            bench.iter(|| black_box(&a).convolve(black_box(&b)).unwrap())
        });
    }
    group.finish();
}

fn neumann(c: &mut Criterion) {
    let mut group = c.benchmark_group("neumann");
    for n in [8u32, 32] {
        group.bench_with_input(BenchmarkId::new("three-point exact", n), &n, |bench, &n| {
            let a = Scalar::ratio(3, 4, Mode::Exact);
            bench.iter(|| invert_three_point(&a, &NeumannConfig::order(n)).unwrap())
        });
    }
    let mu = AtomicMeasure::from_integers_1d(Mode::Float, &[(-2, 1), (-1, 2), (1, 2), (2, 1)])
        .scale(&Scalar::float(0.1))
        .unwrap();
    group.bench_function("float order 64", |bench| {
        bench.iter(|| neumann_inverse(black_box(&mu), &NeumannConfig::order(64)).unwrap())
    });
    group.finish();
}

fn lateral(c: &mut Criterion) {
    let mut group = c.benchmark_group("lateral reconstruct");
    for mode in [Mode::Exact, Mode::Float] {
        let samples: Vec<Scalar> = (0..41).map(|k| Scalar::from_i64((k * k) % 13, mode)).collect();
        let f = LatticeSignal::from_samples_1d(-20, &samples, mode).unwrap();
        let kernel = binomial_kernel(mode);
        let inverse = symmetric_binomial_inverse(50, mode).unwrap();
        group.bench_function(BenchmarkId::new("N=50", mode), |bench| {
            bench.iter(|| reconstruct(black_box(&f), &kernel, &inverse).unwrap())
        });
    }
    group.finish();
}

fn gaussian(c: &mut Criterion) {
    let f = reference_bump();
    let g = blur(&f).unwrap();
    let mut group = c.benchmark_group("gaussian");
    group.bench_function("blur 1024", |bench| bench.iter(|| blur(black_box(&f)).unwrap()));
    group.bench_function("analytic deblur B=6", |bench| {
        let mode = DeblurMode::AnalyticAmplifier { band_limit: Some(6.0) };
        bench.iter(|| naive_deblur(black_box(&g), mode).unwrap())
    });
    group.finish();
}

criterion_group!(benches, convolution, neumann, lateral, gaussian);
criterion_main!(benches);
