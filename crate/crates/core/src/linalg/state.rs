use serde::Serialize;

use super::{raw_norm, ComplexScalar, DiagonalDistribution};
use crate::error::{CoherenceError, Result};
use crate::tolerance;

/// A unit-norm pure state expanded in the computational basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct StateVector {
    amps: Vec<ComplexScalar>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized.
    pub fn new(amps: Vec<ComplexScalar>) -> Result<Self> {
        check_finite(&amps)?;
        if amps.is_empty() {
            return Err(CoherenceError::BadDimension { dim: 0, min: 1 });
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tolerance::NORM {
            return Err(CoherenceError::NotNormalized { norm_sqr });
        }
        Ok(Self { amps })
    }

    /// Computational basis state `|index>` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 || index >= dim {
            return Err(CoherenceError::BadDimension { dim, min: index + 1 });
        }
        let mut amps = vec![ComplexScalar::new(0.0, 0.0); dim];
        amps[index] = ComplexScalar::new(1.0, 0.0);
        Ok(Self { amps })
    }

    /// Normalizes real amplitudes, a convenience for hand-written examples.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        let raw: Vec<ComplexScalar> = values.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect();
        normalize(&raw)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[ComplexScalar] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<ComplexScalar> {
        self.amps
    }

    /// `e^{i theta} |self>`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = ComplexScalar::from_polar(1.0, theta);
        Self {
            amps: self.amps.iter().map(|&z| z * phase).collect(),
        }
    }
}

fn check_finite(amps: &[ComplexScalar]) -> Result<()> {
    match amps.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(index) => Err(CoherenceError::NonFinite { index }),
        None => Ok(()),
    }
}

/// Returns `v / ||v||`.
pub fn normalize(v: &[ComplexScalar]) -> Result<StateVector> {
    check_finite(v)?;
    if v.is_empty() {
        return Err(CoherenceError::BadDimension { dim: 0, min: 1 });
    }
    let norm = raw_norm(v);
    if norm <= tolerance::ZERO_VECTOR {
        return Err(CoherenceError::ZeroVector { norm, branch: None });
    }
    let inv = 1.0 / norm;
    Ok(StateVector {
        amps: v.iter().map(|&z| z * inv).collect(),
    })
}

/// `<a|b> = sum_i conj(a_i) b_i`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<ComplexScalar> {
    if a.dim() != b.dim() {
        return Err(CoherenceError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(raw_inner(a.amps(), b.amps()))
}

pub(crate) fn raw_inner(a: &[ComplexScalar], b: &[ComplexScalar]) -> ComplexScalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Diagonal of `|psi><psi|`, i.e. the Born probabilities `|psi_i|^2`.
pub fn dephase_pure(psi: &StateVector) -> DiagonalDistribution {
    DiagonalDistribution::from_trusted(psi.amps().iter().map(|z| z.norm_sqr()).collect())
}
