use std::hint::black_box;

use coherence_lab_core::ensembles::{sample_coefficients, sample_haar_state};
use coherence_lab_core::linalg::hermitian_eigenvalues;
use coherence_lab_core::{
    evaluate_all, pure_state_coherence, relative_entropy_coherence, run_ensemble, DensityMatrix, EnsembleConfig,
    PairKind, Seed,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const DIMS: [usize; 4] = [2, 4, 8, 16];

fn eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi_eigenvalues");
    for dim in DIMS {
        let psi = sample_haar_state(&mut Seed(1).rng(), dim).unwrap();
        let rho = DensityMatrix::pure(&psi);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &rho, |b, rho| {
            b.iter(|| hermitian_eigenvalues(black_box(rho.matrix())).unwrap())
        });
    }
    group.finish();
}

fn coherence(c: &mut Criterion) {
    let mut group = c.benchmark_group("coherence");
    for dim in DIMS {
        let psi = sample_haar_state(&mut Seed(2).rng(), dim).unwrap();
        let rho = DensityMatrix::pure(&psi);
        group.bench_with_input(BenchmarkId::new("pure", dim), &psi, |b, psi| {
            b.iter(|| pure_state_coherence(black_box(psi)))
        });
        group.bench_with_input(BenchmarkId::new("density_matrix", dim), &rho, |b, rho| {
            b.iter(|| relative_entropy_coherence(black_box(rho)).unwrap())
        });
    }
    group.finish();
}

fn bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_all");
    for dim in DIMS {
        let mut rng = Seed(3).rng();
        let phi = sample_haar_state(&mut rng, dim).unwrap();
        let psi = sample_haar_state(&mut rng, dim).unwrap();
        let coeffs = sample_coefficients(&mut rng);
        group.bench_function(BenchmarkId::from_parameter(dim), |b| {
            b.iter(|| evaluate_all(black_box(&coeffs), &phi, &psi, 1e-9).unwrap())
        });
    }
    group.finish();
}

fn ensemble(c: &mut Criterion) {
    let config = EnsembleConfig::new(8, 1_000, PairKind::Arbitrary, Seed(4));
    c.bench_function("run_ensemble_d8_1000", |b| b.iter(|| run_ensemble(black_box(&config)).unwrap()));
}

criterion_group!(benches, eigenvalues, coherence, bounds, ensemble);
criterion_main!(benches);
