//! Shannon, binary and von Neumann entropies, and the relative entropy of
//! coherence `C(rho) = S(diag(rho)) - S(rho)`.
//!
//! All logarithms are base 2, so entropies and coherences are in bits. With
//! this base the binary entropy peaks at exactly one bit, which is the scale
//! on which the superposition gain bound is stated.

use std::fmt;

use serde::Serialize;

use crate::error::{CoherenceError, Result};
use crate::linalg::{dephase_mixed, dephase_pure, hermitian_eigenvalues, DensityMatrix, DiagonalDistribution, StateVector};
use crate::tolerance;

/// An entropy or coherence value in bits. Never negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Bits(f64);

impl Bits {
    pub const ZERO: Bits = Bits(0.0);

    /// Clamps tiny negative rounding residue to zero.
    fn clamped(value: f64) -> Self {
        Bits(value.max(0.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `-sum p log2 p` over entries above the probability floor.
fn entropy_of(probs: impl IntoIterator<Item = f64>) -> Bits {
    let sum: f64 = probs
        .into_iter()
        .filter(|&p| p >= tolerance::PROBABILITY_FLOOR)
        .map(|p| -p * p.log2())
        .sum();
    Bits::clamped(sum)
}

pub fn shannon_entropy(p: &DiagonalDistribution) -> Bits {
    entropy_of(p.probs().iter().copied())
}

/// `h(x) = -x log2 x - (1 - x) log2 (1 - x)`.
pub fn binary_entropy(x: f64) -> Result<Bits> {
    if !(-tolerance::UNIT_INTERVAL..=1.0 + tolerance::UNIT_INTERVAL).contains(&x) {
        return Err(CoherenceError::Domain { value: x });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(entropy_of([x, 1.0 - x]))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<Bits> {
    let eigenvalues = hermitian_eigenvalues(rho.matrix())?;
    Ok(entropy_of(eigenvalues.into_iter().map(|e| e.max(0.0))))
}

/// `S(diag(rho)) - S(rho)`, via the eigensolver.
pub fn relative_entropy_coherence(rho: &DensityMatrix) -> Result<Bits> {
    let value = shannon_entropy(&dephase_mixed(rho)).value() - von_neumann_entropy(rho)?.value();
    if value < -tolerance::COHERENCE_CLAMP {
        return Err(CoherenceError::InternalConsistency { value });
    }
    Ok(Bits::clamped(value))
}

/// Coherence of a pure state: the Shannon entropy of its Born probabilities.
pub fn pure_state_coherence(psi: &StateVector) -> Bits {
    shannon_entropy(&dephase_pure(psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn dist(p: &[f64]) -> DiagonalDistribution {
        DiagonalDistribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&dist(&[1.0, 0.0])).value(), 0.0);
        assert_eq!(shannon_entropy(&dist(&[0.5, 0.5])).value(), 1.0);
        // 0.5*1 + 2*0.25*2 = 1.5
        assert!((shannon_entropy(&dist(&[0.5, 0.25, 0.25])).value() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.0).unwrap().value(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap().value(), 0.0);
        assert_eq!(binary_entropy(0.5).unwrap().value(), 1.0);
        let expected = 3f64.log2() - 2.0 / 3.0;
        assert!((binary_entropy(1.0 / 3.0).unwrap().value() - expected).abs() < 1e-15);
        assert!((expected - 0.918296).abs() < 1e-6);
    }

    #[test]
    fn binary_entropy_domain() {
        assert!(binary_entropy(-1e-13).is_ok());
        assert!(matches!(binary_entropy(-1e-6), Err(CoherenceError::Domain { .. })));
        assert!(matches!(binary_entropy(1.1), Err(CoherenceError::Domain { .. })));
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        let psi = StateVector::from_real(&[0.3, -0.2, 0.9]).unwrap();
        assert!(von_neumann_entropy(&DensityMatrix::pure(&psi)).unwrap().value() < 1e-12);

        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap().value() - 2.0).abs() < 1e-15);

        let diag = DensityMatrix::new(Matrix::from_real_diagonal(&[0.3, 0.7]).unwrap()).unwrap();
        let h = -0.3 * 0.3f64.log2() - 0.7 * 0.7f64.log2();
        assert!((von_neumann_entropy(&diag).unwrap().value() - h).abs() < 1e-15);
        assert!((h - 0.881291).abs() < 1e-6);
    }

    #[test]
    fn relative_entropy_coherence_examples() {
        let diag = DensityMatrix::new(Matrix::from_real_diagonal(&[0.3, 0.7]).unwrap()).unwrap();
        assert_eq!(relative_entropy_coherence(&diag).unwrap().value(), 0.0);

        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let c = relative_entropy_coherence(&DensityMatrix::pure(&plus)).unwrap();
        assert!((c.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_state_coherence_examples() {
        assert_eq!(pure_state_coherence(&StateVector::basis(2, 0).unwrap()).value(), 0.0);
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!((pure_state_coherence(&plus).value() - 1.0).abs() < 1e-15);

        let psi = StateVector::from_real(&[0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        let h = -0.9 * 0.9f64.log2() - 0.1 * 0.1f64.log2();
        assert!((pure_state_coherence(&psi).value() - h).abs() < 1e-14);
        assert!((h - 0.468996).abs() < 1e-6);
    }
}
