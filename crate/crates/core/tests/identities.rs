//! The algebraic identities behind the upper bounds, checked on random inputs.

use coherence_lab_core::ensembles::{
    random_coefficients, sample_coefficients, sample_haar_state, sample_orthogonal_pair, sub_seed, Seed,
};
use coherence_lab_core::superpose::{
    classify_pair, mixing_identity_residual, norm_identity_residual, superpose, t_state_mixing_residual,
};
use coherence_lab_core::{ComplexScalar, StateVector};
use proptest::prelude::*;

fn arbitrary_triple(seed: u64, d: usize) -> (coherence_lab_core::SuperpositionCoefficients, StateVector, StateVector) {
    let mut rng = sub_seed(Seed(0x1de), seed).rng();
    let phi = sample_haar_state(&mut rng, d).unwrap();
    let psi = sample_haar_state(&mut rng, d).unwrap();
    (sample_coefficients(&mut rng), phi, psi)
}

#[test]
fn mixing_and_norm_identities_hold_on_random_triples() {
    for seed in 0..1000u64 {
        let d = 2 + (seed % 15) as usize;
        let (c, phi, psi) = arbitrary_triple(seed, d);
        assert!(mixing_identity_residual(&c, &phi, &psi).unwrap() <= 1e-12);
        assert!(t_state_mixing_residual(&c, &phi, &psi).unwrap() <= 1e-12);
        assert!(norm_identity_residual(&c, &phi, &psi).unwrap() <= 1e-12);
    }
}

#[test]
fn mixing_identity_on_orthogonal_pairs() {
    for seed in 0..1000u64 {
        let d = 2 + (seed % 15) as usize;
        let mut rng = Seed(seed).rng();
        let (phi, psi) = sample_orthogonal_pair(&mut rng, d).unwrap();
        let c = sample_coefficients(&mut rng);
        assert!(mixing_identity_residual(&c, &phi, &psi).unwrap() <= 1e-12);
        let s = superpose(&c, &phi, &psi).unwrap().norm;
        assert!((s - 1.0).abs() <= 1e-10);
    }
}

proptest! {
    #[test]
    fn classification_is_symmetric(seed in any::<u64>(), d in 2usize..=16) {
        let (_, phi, psi) = arbitrary_triple(seed, d);
        let ab = classify_pair(&phi, &psi).unwrap();
        let ba = classify_pair(&psi, &phi).unwrap();
        prop_assert_eq!(ab.tag, ba.tag);
        prop_assert!((ab.overlap - ba.overlap.conj()).norm() <= 1e-15);
    }

    #[test]
    fn squared_norm_follows_overlap(seed in any::<u64>(), d in 2usize..=16) {
        let (c, phi, psi) = arbitrary_triple(seed, d);
        let overlap: ComplexScalar = phi.amps().iter().zip(psi.amps()).map(|(a, b)| a.conj() * b).sum();
        let s = superpose(&c, &phi, &psi).unwrap().norm;
        let expected = 1.0 + 2.0 * (c.alpha().conj() * c.beta() * overlap).re;
        prop_assert!((s * s - expected).abs() <= 1e-10);
    }

    #[test]
    fn normalized_superposition_rescales_to_raw(seed in any::<u64>(), d in 2usize..=16) {
        let c = random_coefficients(Seed(seed));
        let (_, phi, psi) = arbitrary_triple(seed, d);
        let sup = superpose(&c, &phi, &psi).unwrap();
        let t1 = sup.normalized.as_ref().unwrap();
        for (z, r) in t1.amps().iter().zip(&sup.raw) {
            prop_assert!((z * sup.norm - r).norm() <= 1e-10);
        }
    }
}
