//! Relative entropy of coherence for pure and mixed states, and numerical
//! checks of how the coherence of a two-term superposition
//! `alpha |phi> + beta |psi>` is bounded by the coherence of its terms.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: state vectors, density matrices, dephasing and a Hermitian
//!   Jacobi eigensolver.
//! - [`entropy`]: Shannon, binary and von Neumann entropies and the relative
//!   entropy of coherence, all in bits.
//! - [`superpose`]: superpositions, their normalized branches, pair
//!   classification and residuals of the underlying algebraic identities.
//! - [`bounds`]: every bound as a [`BoundReport`] with explicit sides.
//! - [`ensembles`]: seeded Haar sampling and the Monte-Carlo trial runner.
//! - [`search`]: multi-start Nelder-Mead search for the tightest inputs.

pub mod bounds;
pub mod ensembles;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod search;
pub mod superpose;
pub mod tolerance;

pub use bounds::{evaluate, evaluate_all, evaluate_pair, BoundId, BoundKind, BoundReport, PairEvaluation};
pub use ensembles::{run_ensemble, run_ensemble_with_workers, EnsembleConfig, PairKind, Seed, TrialRecord};
pub use entropy::{pure_state_coherence, relative_entropy_coherence, Bits};
pub use error::{CoherenceError, Result};
pub use linalg::{ComplexScalar, DensityMatrix, DiagonalDistribution, Matrix, StateVector};
pub use search::{minimize_slack, SearchResult, SearchSpec};
pub use superpose::{classify_pair, superpose, PairClass, PairTag, SuperposedState, SuperpositionCoefficients};
pub use tolerance::Tolerances;
