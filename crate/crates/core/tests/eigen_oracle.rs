mod common;

use coherence_lab_core::linalg::hermitian_eigenvalues;
use coherence_lab_core::{ComplexScalar, Matrix};
use proptest::prelude::*;
use rand::Rng;

/// (a+b)/2 +- sqrt((a-b)^2/4 + |c|^2)
fn closed_form(a: f64, b: f64, c: ComplexScalar) -> [f64; 2] {
    let mid = 0.5 * (a + b);
    let rad = (0.25 * (a - b).powi(2) + c.norm_sqr()).sqrt();
    [mid + rad, mid - rad]
}

#[test]
fn two_by_two_matches_closed_form() {
    let mut rng = common::rng(0x2b2);
    for _ in 0..1000 {
        let a: f64 = rng.random_range(-2.0..2.0);
        let b: f64 = rng.random_range(-2.0..2.0);
        let c = ComplexScalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let m = Matrix::new(2, vec![ComplexScalar::new(a, 0.0), c, c.conj(), ComplexScalar::new(b, 0.0)]).unwrap();
        let got = hermitian_eigenvalues(&m).unwrap();
        let want = closed_form(a, b, c);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= 1e-12, "{got:?} vs {want:?}");
        }
    }
}

#[test]
fn sixty_four_dimensional_matrix_converges() {
    let mut rng = common::rng(64);
    let m = common::random_hermitian(&mut rng, 64);
    let ev = hermitian_eigenvalues(&m).unwrap();
    let trace: f64 = (0..64).map(|i| m.get(i, i).re).sum();
    assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_and_frobenius_are_conserved(seed in any::<u64>(), d in 1usize..=16) {
        let mut rng = common::rng(seed);
        let m = common::random_hermitian(&mut rng, d);
        let ev = hermitian_eigenvalues(&m).unwrap();
        let trace: f64 = (0..d).map(|i| m.get(i, i).re).sum();
        prop_assert!((ev.iter().sum::<f64>() - trace).abs() <= 1e-10);
        let sum_sq: f64 = ev.iter().map(|e| e * e).sum();
        prop_assert!((sum_sq - m.frobenius_sqr()).abs() <= 1e-9);
        prop_assert!(ev.windows(2).all(|w| w[0] >= w[1]));
    }
}
