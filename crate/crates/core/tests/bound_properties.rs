//! Structural properties of the bound reports and small Monte-Carlo sweeps.
//! The full-size sweeps live in the CLI crate's acceptance suite.

use coherence_lab_core::bounds::{theorem1_equality, theorem2_upper, theorem4_lower};
use coherence_lab_core::ensembles::{run_ensemble, sample_coefficients, sample_haar_state, EnsembleConfig, PairKind, Seed};
use coherence_lab_core::{evaluate_all, BoundId, PairTag};
use proptest::prelude::*;

const TOL: f64 = coherence_lab_core::tolerance::BOUND;

#[test]
fn every_kind_satisfies_its_bounds_on_a_small_sweep() {
    for kind in PairKind::ALL {
        for d in [2, 3, 5, 8] {
            let config = EnsembleConfig::new(d, 300, kind, Seed(31 + d as u64));
            for record in run_ensemble(&config).unwrap() {
                assert!(record.error.is_none(), "{kind} d={d}: {:?}", record.error);
                assert_eq!(record.violations(), 0, "{kind} d={d}: {:?}", record.reports);
                let tag = record.pair_class.unwrap();
                match kind {
                    PairKind::DisjointSupport => assert_eq!(tag, PairTag::DisjointSupport),
                    PairKind::OrthogonalSameSpace => assert_ne!(tag, PairTag::NonOrthogonal),
                    PairKind::NonOrthogonal => assert_eq!(tag, PairTag::NonOrthogonal),
                    PairKind::Arbitrary => {}
                }
            }
        }
    }
}

#[test]
fn theorem2_never_binds_tighter_than_theorem1() {
    for seed in 0..500u64 {
        let mut config = EnsembleConfig::new(2 + (seed % 15) as usize, 1, PairKind::DisjointSupport, Seed(seed));
        config.split = None;
        let (phi, psi) = coherence_lab_core::ensembles::random_disjoint_support_pair(&config).unwrap();
        let c = coherence_lab_core::ensembles::random_coefficients(Seed(seed ^ 0xff));
        let t1 = theorem1_equality(&c, &phi, &psi, TOL).unwrap();
        let t2 = theorem2_upper(&c, &phi, &psi, TOL).unwrap();
        assert!(t2.slack >= t1.slack - 1e-9);
    }
}

proptest! {
    #[test]
    fn theorem4_branches_swap_with_the_terms(seed in any::<u64>(), d in 2usize..=16) {
        let mut rng = Seed(seed).rng();
        let phi = sample_haar_state(&mut rng, d).unwrap();
        let psi = sample_haar_state(&mut rng, d).unwrap();
        let c = sample_coefficients(&mut rng);
        let (a, _) = theorem4_lower(&c, &phi, &psi, TOL).unwrap();
        let (_, b) = theorem4_lower(&c.swapped(), &psi, &phi, TOL).unwrap();
        prop_assert!((a.rhs - b.rhs).abs() <= 1e-12);
        prop_assert!((a.lhs - b.lhs).abs() <= 1e-12);
    }

    #[test]
    fn reports_ignore_a_phase_moved_between_term_and_coefficient(
        seed in any::<u64>(), d in 2usize..=16, theta in -6.0f64..6.0
    ) {
        let mut rng = Seed(seed).rng();
        let phi = sample_haar_state(&mut rng, d).unwrap();
        let psi = sample_haar_state(&mut rng, d).unwrap();
        let c = sample_coefficients(&mut rng);
        let original = evaluate_all(&c, &phi, &psi, TOL).unwrap();
        let moved = evaluate_all(&c.with_alpha_phase(-theta), &phi.with_global_phase(theta), &psi, TOL).unwrap();
        prop_assert_eq!(original.len(), moved.len());
        for (x, y) in original.iter().zip(&moved) {
            prop_assert_eq!(x.bound_id, y.bound_id);
            prop_assert!((x.lhs - y.lhs).abs() <= 1e-12);
        }
    }
}

#[test]
fn bound_ids_cover_every_report() {
    let c = coherence_lab_core::SuperpositionCoefficients::real(0.5).unwrap();
    let zero = coherence_lab_core::StateVector::basis(2, 0).unwrap();
    let one = coherence_lab_core::StateVector::basis(2, 1).unwrap();
    for r in evaluate_all(&c, &zero, &one, TOL).unwrap() {
        assert!(BoundId::ALL.contains(&r.bound_id));
    }
}
