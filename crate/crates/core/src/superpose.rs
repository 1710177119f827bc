//! Two-term superpositions `alpha |phi> + beta |psi>`, the normalized
//! `T1`/`T2` branches, pair classification, and residuals of the algebraic
//! identities the bounds are built from.

use serde::{Deserialize, Serialize};

use crate::error::{CoherenceError, Result};
use crate::linalg::{inner_product, normalize, raw_norm, ComplexScalar, StateVector};
use crate::tolerance;

/// Coefficients `(alpha, beta)` with `|alpha|^2 + |beta|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperpositionCoefficients {
    alpha: ComplexScalar,
    beta: ComplexScalar,
}

impl SuperpositionCoefficients {
    pub fn new(alpha: ComplexScalar, beta: ComplexScalar) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite() && beta.re.is_finite() && beta.im.is_finite()) {
            return Err(CoherenceError::NonFinite { index: 0 });
        }
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sqr - 1.0).abs() > tolerance::NORM {
            return Err(CoherenceError::BadCoefficients { norm_sqr });
        }
        Ok(Self { alpha, beta })
    }

    /// Real non-negative coefficients with `|alpha|^2 = alpha_sq`.
    pub fn real(alpha_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(CoherenceError::Domain { value: alpha_sq });
        }
        Self::new(
            ComplexScalar::new(alpha_sq.sqrt(), 0.0),
            ComplexScalar::new((1.0 - alpha_sq).sqrt(), 0.0),
        )
    }

    /// `alpha = cos theta`, `beta = sin theta * e^{i phi}`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            alpha: ComplexScalar::new(theta.cos(), 0.0),
            beta: ComplexScalar::from_polar(theta.sin(), phi),
        }
    }

    pub fn alpha(&self) -> ComplexScalar {
        self.alpha
    }

    pub fn beta(&self) -> ComplexScalar {
        self.beta
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn beta_sq(&self) -> f64 {
        self.beta.norm_sqr()
    }

    /// `(beta, alpha)`.
    pub fn swapped(&self) -> Self {
        Self { alpha: self.beta, beta: self.alpha }
    }

    /// `(alpha e^{i theta}, beta)`.
    pub fn with_alpha_phase(&self, theta: f64) -> Self {
        Self {
            alpha: self.alpha * ComplexScalar::from_polar(1.0, theta),
            beta: self.beta,
        }
    }
}

/// `alpha |phi> + beta |psi>` before and after normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperposedState {
    pub raw: Vec<ComplexScalar>,
    /// `||raw||`.
    pub norm: f64,
    /// `raw / norm`, absent when the superposition cancels.
    pub normalized: Option<StateVector>,
}

fn check_dims(phi: &StateVector, psi: &StateVector) -> Result<()> {
    if phi.dim() != psi.dim() {
        return Err(CoherenceError::DimensionMismatch { left: phi.dim(), right: psi.dim() });
    }
    Ok(())
}

/// `alpha a_i + sign * beta b_i` for every basis index.
fn combine(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector, sign: f64) -> Vec<ComplexScalar> {
    let beta = c.beta * sign;
    phi.amps()
        .iter()
        .zip(psi.amps())
        .map(|(a, b)| c.alpha * a + beta * b)
        .collect()
}

fn build(raw: Vec<ComplexScalar>) -> SuperposedState {
    let norm = raw_norm(&raw);
    let normalized = if norm > tolerance::ZERO_VECTOR {
        normalize(&raw).ok()
    } else {
        None
    };
    SuperposedState { raw, norm, normalized }
}

pub fn superpose(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector) -> Result<SuperposedState> {
    check_dims(phi, psi)?;
    Ok(build(combine(c, phi, psi, 1.0)))
}

/// `alpha |phi> - beta |psi>`, the partner branch of [`superpose`].
pub fn superpose_minus(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector) -> Result<SuperposedState> {
    check_dims(phi, psi)?;
    Ok(build(combine(c, phi, psi, -1.0)))
}

/// Normalized `T1 = (alpha phi + beta psi)/s+` and `T2 = (alpha phi - beta psi)/s-`.
pub fn t_states(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector) -> Result<(StateVector, StateVector)> {
    let plus = superpose(c, phi, psi)?;
    let minus = superpose_minus(c, phi, psi)?;
    let t1 = plus
        .normalized
        .ok_or(CoherenceError::ZeroVector { norm: plus.norm, branch: Some("plus") })?;
    let t2 = minus
        .normalized
        .ok_or(CoherenceError::ZeroVector { norm: minus.norm, branch: Some("minus") })?;
    Ok((t1, t2))
}

/// How two states relate with respect to the incoherent basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairTag {
    /// No basis index carries amplitude in both states.
    DisjointSupport,
    /// Orthogonal, but sharing support on some basis index.
    OrthogonalSameSpace,
    NonOrthogonal,
}

impl PairTag {
    pub fn name(self) -> &'static str {
        match self {
            PairTag::DisjointSupport => "DisjointSupport",
            PairTag::OrthogonalSameSpace => "OrthogonalSameSpace",
            PairTag::NonOrthogonal => "NonOrthogonal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairClass {
    pub tag: PairTag,
    /// `<phi|psi>`.
    pub overlap: ComplexScalar,
}

impl PairClass {
    /// True for both orthogonal tags.
    pub fn is_orthogonal(&self) -> bool {
        self.tag != PairTag::NonOrthogonal
    }
}

pub fn classify_pair(phi: &StateVector, psi: &StateVector) -> Result<PairClass> {
    let overlap = inner_product(phi, psi)?;
    let disjoint = phi
        .amps()
        .iter()
        .zip(psi.amps())
        .all(|(a, b)| a.norm().min(b.norm()) <= tolerance::SUPPORT);
    let tag = if disjoint {
        PairTag::DisjointSupport
    } else if overlap.norm() <= tolerance::ORTHOGONAL {
        PairTag::OrthogonalSameSpace
    } else {
        PairTag::NonOrthogonal
    };
    Ok(PairClass { tag, overlap })
}

/// Max componentwise gap in
/// `(|omega_i|^2 + |gamma_i|^2)/2 = |alpha|^2 |a_i|^2 + |beta|^2 |b_i|^2`,
/// with `omega = alpha phi + beta psi` and `gamma = alpha phi - beta psi`
/// left unnormalized.
pub fn mixing_identity_residual(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector) -> Result<f64> {
    let omega = superpose(c, phi, psi)?.raw;
    let gamma = superpose_minus(c, phi, psi)?.raw;
    let (a2, b2) = (c.alpha_sq(), c.beta_sq());
    Ok(phi
        .amps()
        .iter()
        .zip(psi.amps())
        .zip(omega.iter().zip(&gamma))
        .map(|((a, b), (w, g))| {
            let left = 0.5 * w.norm_sqr() + 0.5 * g.norm_sqr();
            let right = a2 * a.norm_sqr() + b2 * b.norm_sqr();
            (left - right).abs()
        })
        .fold(0.0, f64::max))
}

/// Same identity routed through the normalized branches:
/// `(s+^2/2) diag(T1) + (s-^2/2) diag(T2) = |alpha|^2 diag(phi) + |beta|^2 diag(psi)`.
pub fn t_state_mixing_residual(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector) -> Result<f64> {
    let (t1, t2) = t_states(c, phi, psi)?;
    let s_plus_sq = superpose(c, phi, psi)?.norm.powi(2);
    let s_minus_sq = superpose_minus(c, phi, psi)?.norm.powi(2);
    let (a2, b2) = (c.alpha_sq(), c.beta_sq());
    Ok((0..phi.dim())
        .map(|i| {
            let left = 0.5 * s_plus_sq * t1.amps()[i].norm_sqr() + 0.5 * s_minus_sq * t2.amps()[i].norm_sqr();
            let right = a2 * phi.amps()[i].norm_sqr() + b2 * psi.amps()[i].norm_sqr();
            (left - right).abs()
        })
        .fold(0.0, f64::max))
}

/// `| ||alpha phi + beta psi||^2 + ||alpha phi - beta psi||^2 - 2 |`.
pub fn norm_identity_residual(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector) -> Result<f64> {
    let plus = superpose(c, phi, psi)?.norm;
    let minus = superpose_minus(c, phi, psi)?.norm;
    Ok((plus * plus + minus * minus - 2.0).abs())
}
