//! Dense complex linear algebra in the computational (incoherent) basis.

mod distribution;
mod eigen;
mod matrix;
mod state;

pub use distribution::DiagonalDistribution;
pub use eigen::hermitian_eigenvalues;
pub use matrix::{dephase_mixed, DensityMatrix, Matrix};
pub use state::{dephase_pure, inner_product, normalize, StateVector};

/// Complex amplitudes and coefficients.
pub type ComplexScalar = num_complex::Complex64;

/// Euclidean norm of a raw complex vector.
pub fn raw_norm(v: &[ComplexScalar]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
