use serde::Serialize;

use crate::error::{CoherenceError, Result};
use crate::tolerance;

/// Diagonal of a dephased state: a probability vector over basis indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DiagonalDistribution {
    probs: Vec<f64>,
}

impl DiagonalDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(CoherenceError::BadDimension { dim: 0, min: 1 });
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(CoherenceError::BadDistribution {
                reason: format!("entry {p} is negative or not finite"),
            });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tolerance::NORM {
            return Err(CoherenceError::BadDistribution {
                reason: format!("entries sum to {total}"),
            });
        }
        Ok(Self { probs })
    }

    /// For diagonals computed from already-validated states.
    pub(crate) fn from_trusted(probs: Vec<f64>) -> Self {
        Self { probs }
    }

    /// `weight * self + (1 - weight) * other`.
    pub fn mix(&self, other: &Self, weight: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(CoherenceError::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(CoherenceError::Domain { value: weight });
        }
        Ok(Self {
            probs: self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(p, q)| weight * p + (1.0 - weight) * q)
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}
