//! Numerical thresholds shared by the library, the tests and the CLI.
//!
//! Every comparison against zero or one in this crate goes through one of
//! these constants. The bound tolerance is the only one callers are expected
//! to override, which is why it is threaded through [`Tolerances`] rather
//! than read directly.

/// Unit-norm and unit-trace checks.
pub const NORM: f64 = 1e-10;

/// Entrywise Hermiticity of a matrix.
pub const HERMITIAN: f64 = 1e-12;

/// Default slack allowed when deciding whether a bound holds.
pub const BOUND: f64 = 1e-9;

/// A raw vector with norm at or below this is treated as the zero vector.
pub const ZERO_VECTOR: f64 = 1e-12;

/// Amplitude magnitude below which a basis index is outside a state's support.
pub const SUPPORT: f64 = 1e-12;

/// Overlap magnitude below which two states count as orthogonal.
pub const ORTHOGONAL: f64 = 1e-10;

/// Most negative eigenvalue a density matrix may have.
pub const NEGATIVE_EIGENVALUE: f64 = 1e-10;

/// Negative coherence in `[-COHERENCE_CLAMP, 0)` is rounding noise and is clamped.
pub const COHERENCE_CLAMP: f64 = 1e-9;

/// Probabilities below this contribute nothing to an entropy sum.
pub const PROBABILITY_FLOOR: f64 = 1e-15;

/// Slop allowed on the argument of the binary entropy outside `[0, 1]`.
pub const UNIT_INTERVAL: f64 = 1e-12;

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Tolerances a run can adjust.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub bound: f64,
}

impl Tolerances {
    pub const fn new(bound: f64) -> Self {
        Self { bound }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { bound: BOUND }
    }
}
