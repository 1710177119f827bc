#![allow(dead_code)]

use coherence_lab_core::ensembles::{complex_gaussian, Seed};
use coherence_lab_core::{ComplexScalar, DiagonalDistribution, Matrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    Seed(seed).rng()
}

/// Random Hermitian matrix with O(1) entries.
pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut entries = vec![ComplexScalar::new(0.0, 0.0); d * d];
    for i in 0..d {
        entries[i * d + i] = ComplexScalar::new(rng.random_range(-1.0..1.0), 0.0);
        for j in (i + 1)..d {
            let z = complex_gaussian(rng);
            entries[i * d + j] = z;
            entries[j * d + i] = z.conj();
        }
    }
    Matrix::new(d, entries).unwrap()
}

/// Random probability vector of length `d`, with zeros outside `support`.
pub fn random_distribution(rng: &mut ChaCha8Rng, d: usize, support: std::ops::Range<usize>) -> DiagonalDistribution {
    let mut p = vec![0.0; d];
    for i in support {
        p[i] = -(1.0 - rng.random::<f64>()).ln();
    }
    let total: f64 = p.iter().sum();
    DiagonalDistribution::new(p.into_iter().map(|x| x / total).collect()).unwrap()
}
