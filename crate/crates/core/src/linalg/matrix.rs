use super::{hermitian_eigenvalues, ComplexScalar, DiagonalDistribution, StateVector};
use crate::error::{CoherenceError, Result};
use crate::tolerance;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<ComplexScalar>,
}

impl Matrix {
    pub fn new(dim: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        if dim == 0 {
            return Err(CoherenceError::BadDimension { dim, min: 1 });
        }
        if entries.len() != dim * dim {
            return Err(CoherenceError::BadShape { len: entries.len(), dim });
        }
        if let Some(index) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoherenceError::NonFinite { index });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut entries = vec![ComplexScalar::new(0.0, 0.0); dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = ComplexScalar::new(d, 0.0);
        }
        Self::new(dim, entries)
    }

    /// `|psi><psi|`.
    pub fn projector(psi: &StateVector) -> Self {
        let amps = psi.amps();
        let dim = amps.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in amps {
            for b in amps {
                entries.push(a * b.conj());
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexScalar {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// First entry pair that breaks Hermiticity beyond `tol`, if any.
    pub(crate) fn hermiticity_violation(&self, tol: f64) -> Option<(usize, usize, f64)> {
        for i in 0..self.dim {
            for j in i..self.dim {
                let deviation = (self.get(i, j) - self.get(j, i).conj()).norm();
                if deviation > tol {
                    return Some((i, j, deviation));
                }
            }
        }
        None
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(matrix: Matrix) -> Result<Self> {
        if let Some((row, col, deviation)) = matrix.hermiticity_violation(tolerance::HERMITIAN) {
            return Err(CoherenceError::NotHermitian { row, col, deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tolerance::NORM {
            return Err(CoherenceError::BadTrace { trace });
        }
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        if let Some(&smallest) = eigenvalues.last() {
            if smallest < -tolerance::NEGATIVE_EIGENVALUE {
                return Err(CoherenceError::NotPositive { eigenvalue: smallest });
            }
        }
        Ok(Self { matrix })
    }

    pub fn pure(psi: &StateVector) -> Self {
        Self { matrix: Matrix::projector(psi) }
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let matrix = Matrix::from_real_diagonal(&vec![1.0 / dim as f64; dim])?;
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// Drops the off-diagonal entries of `rho`, keeping the real diagonal.
pub fn dephase_mixed(rho: &DensityMatrix) -> DiagonalDistribution {
    let m = rho.matrix();
    DiagonalDistribution::from_trusted((0..m.dim()).map(|i| m.get(i, i).re).collect())
}
