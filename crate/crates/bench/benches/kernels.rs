//! Benchmarks for the kernels that dominate batch experiments: membership
//! classification, joint spectra, numerical radius, fiber tracing and the
//! truncated dilation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use std::hint::black_box;
use symdisc::gamma::generate_pure;
use symdisc::geometry::{classify, symmetrize};
use symdisc::matrix::{numerical_radius, re, CMatrix};
use symdisc::sample;
use symdisc::spectrum::{taylor_spectrum, CommutingTuple};
use symdisc::variety::{build_variety, trace};

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for n in [2usize, 3, 4, 6] {
        let mut rng = sample::stream(1, "bench-classify", n as u64);
        let points: Vec<_> = (0..256)
            .map(|_| symmetrize(&sample::polydisc_point(n, &mut rng)).unwrap())
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &points, |b, pts| {
            b.iter(|| {
                for x in pts {
                    black_box(classify(x, 1e-8));
                }
            })
        });
    }
    group.finish();
}

fn bench_taylor_spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("taylor_spectrum");
    for order in [4usize, 8, 16, 32] {
        let mut rng = sample::stream(2, "bench-spectrum", order as u64);
        let (mats, _) = sample::commuting_upper_family(order, 3, &mut rng);
        let q = sample::random_unitary(order, &mut rng);
        let conj: Vec<CMatrix> = mats.iter().map(|m| &q * m * q.adjoint()).collect();
        let t = CommutingTuple::new(conj, 1e-7).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(order), &t, |b, t| {
            b.iter(|| black_box(taylor_spectrum(t, 1e-6).unwrap()))
        });
    }
    group.finish();
}

fn bench_numerical_radius(c: &mut Criterion) {
    let mut group = c.benchmark_group("numerical_radius");
    for order in [4usize, 16, 48] {
        let mut rng = sample::stream(3, "bench-radius", order as u64);
        let a = sample::gaussian_matrix(order, order, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(order), &a, |b, a| {
            b.iter(|| black_box(numerical_radius(a, 256).unwrap()))
        });
    }
    group.finish();
}

fn bench_variety_trace(c: &mut Criterion) {
    let nil = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
    let v = build_variety(vec![nil.clone(), nil], 1e-9).unwrap();
    c.bench_function("variety_trace_4x16", |b| {
        b.iter(|| black_box(trace(&v, 4, 16, 1e-8).unwrap()))
    });
}

fn bench_dilation(c: &mut Criterion) {
    // commuting normal 2x2 data with joint spectrum well inside G_2
    let f = vec![
        CMatrix::from_diagonal(&nalgebra_diag(&[
            Complex64::new(0.4, 0.1),
            Complex64::new(-0.2, 0.3),
        ])),
        CMatrix::from_diagonal(&nalgebra_diag(&[
            Complex64::new(0.1, -0.2),
            Complex64::new(0.2, 0.0),
        ])),
    ];
    let big_n = 6;
    let t = generate_pure(&f, big_n, 1e-8).unwrap();
    c.bench_function("build_dilation", |b| {
        b.iter(|| black_box(symdisc::hardy::build_dilation(&t, big_n + 2, 1e-7).unwrap()))
    });
}

fn nalgebra_diag(v: &[Complex64]) -> nalgebra::DVector<Complex64> {
    nalgebra::DVector::from_vec(v.to_vec())
}

criterion_group!(
    benches,
    bench_classify,
    bench_taylor_spectrum,
    bench_numerical_radius,
    bench_variety_trace,
    bench_dilation
);
criterion_main!(benches);
