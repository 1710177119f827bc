//! Each superposition bound as a checkable relation with explicit sides.
//!
//! Notation: `C(.)` is the relative entropy of coherence, `h` the binary
//! entropy, `s = ||alpha phi + beta psi||` and `T1` the normalized
//! superposition.
//!
//! | id            | relation                                                        | applies to        |
//! |---------------|-----------------------------------------------------------------|-------------------|
//! | `T1_EQUALITY` | `C(T1) = |a|^2 C(phi) + |b|^2 C(psi) + h(|a|^2)`                  | disjoint support  |
//! | `GAIN_LE_1`   | `C(T1) - |a|^2 C(phi) - |b|^2 C(psi) <= 1`                        | disjoint support  |
//! | `T2_UPPER`    | `C(T1) <= 2 [|a|^2 C(phi) + |b|^2 C(psi) + h(|a|^2)]`             | orthogonal        |
//! | `T3_UPPER`    | `s^2 C(T1) <= 2 [|a|^2 C(phi) + |b|^2 C(psi) + h(|a|^2)]`         | any, `s > 0`      |
//! | `T4_LOWER_A`  | `s^2 C(T1) >= |a|^2/2 C(phi) - |b|^2 C(psi) - (s^2+|b|^2) h(|b|^2/(s^2+|b|^2))` | any, `s > 0` |
//! | `T4_LOWER_B`  | branch A with `(alpha, phi)` and `(beta, psi)` exchanged          | any, `s > 0`      |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::entropy::{binary_entropy, pure_state_coherence};
use crate::error::{CoherenceError, Result};
use crate::linalg::StateVector;
use crate::superpose::{classify_pair, superpose, PairClass, PairTag, SuperposedState, SuperpositionCoefficients};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundId {
    #[serde(rename = "T1_EQUALITY")]
    T1Equality,
    #[serde(rename = "GAIN_LE_1")]
    GainLe1,
    #[serde(rename = "T2_UPPER")]
    T2Upper,
    #[serde(rename = "T3_UPPER")]
    T3Upper,
    #[serde(rename = "T4_LOWER_A")]
    T4LowerA,
    #[serde(rename = "T4_LOWER_B")]
    T4LowerB,
}

/// Which way a bound compares its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Equality,
    Upper,
    Lower,
}

impl BoundId {
    pub const ALL: [BoundId; 6] = [
        BoundId::T1Equality,
        BoundId::GainLe1,
        BoundId::T2Upper,
        BoundId::T3Upper,
        BoundId::T4LowerA,
        BoundId::T4LowerB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::T1Equality => "T1_EQUALITY",
            BoundId::GainLe1 => "GAIN_LE_1",
            BoundId::T2Upper => "T2_UPPER",
            BoundId::T3Upper => "T3_UPPER",
            BoundId::T4LowerA => "T4_LOWER_A",
            BoundId::T4LowerB => "T4_LOWER_B",
        }
    }

    pub fn kind(self) -> BoundKind {
        match self {
            BoundId::T1Equality => BoundKind::Equality,
            BoundId::GainLe1 | BoundId::T2Upper | BoundId::T3Upper => BoundKind::Upper,
            BoundId::T4LowerA | BoundId::T4LowerB => BoundKind::Lower,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = CoherenceError;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        BoundId::ALL
            .into_iter()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| CoherenceError::InvalidConfig(format!("unknown bound id `{s}`")))
    }
}

/// One bound evaluated at one input triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs` for upper bounds, `lhs - rhs` for lower bounds and
    /// `|lhs - rhs|` (the residual) for the equality.
    pub slack: f64,
    pub satisfied: bool,
    pub tolerance: f64,
    pub inputs_digest: String,
}

impl BoundReport {
    fn new(bound_id: BoundId, lhs: f64, rhs: f64, tolerance: f64, inputs_digest: String) -> Self {
        let (slack, satisfied) = match bound_id.kind() {
            BoundKind::Equality => {
                let residual = (lhs - rhs).abs();
                (residual, residual <= tolerance)
            }
            BoundKind::Upper => (rhs - lhs, rhs - lhs >= -tolerance),
            BoundKind::Lower => (lhs - rhs, lhs - rhs >= -tolerance),
        };
        Self { bound_id, lhs, rhs, slack, satisfied, tolerance, inputs_digest }
    }

    /// Signed distance from violation: larger is safer, negative beyond the
    /// tolerance means the bound failed. For the equality this is the
    /// negated residual.
    pub fn margin(&self) -> f64 {
        match self.bound_id.kind() {
            BoundKind::Equality => -self.slack,
            _ => self.slack,
        }
    }
}

/// Stable 64-bit hex digest of the coefficient and amplitude bit patterns.
pub fn inputs_digest(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector) -> String {
    let mut hasher = Sha256::new();
    hasher.update((phi.dim() as u64).to_le_bytes());
    let scalars = [c.alpha(), c.beta()]
        .into_iter()
        .chain(phi.amps().iter().copied())
        .chain(psi.amps().iter().copied());
    for z in scalars {
        hasher.update(z.re.to_bits().to_le_bytes());
        hasher.update(z.im.to_bits().to_le_bytes());
    }
    hasher.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Quantities shared by all bounds for one input triple.
struct Evaluation<'a> {
    c: &'a SuperpositionCoefficients,
    class: PairClass,
    coherence_phi: f64,
    coherence_psi: f64,
    superposition: SuperposedState,
    tolerance: f64,
    digest: String,
}

impl<'a> Evaluation<'a> {
    fn new(c: &'a SuperpositionCoefficients, phi: &StateVector, psi: &StateVector, tolerance: f64) -> Result<Self> {
        let class = classify_pair(phi, psi)?;
        Ok(Self {
            c,
            class,
            coherence_phi: pure_state_coherence(phi).value(),
            coherence_psi: pure_state_coherence(psi).value(),
            superposition: superpose(c, phi, psi)?,
            tolerance,
            digest: inputs_digest(c, phi, psi),
        })
    }

    fn report(&self, id: BoundId, lhs: f64, rhs: f64) -> BoundReport {
        BoundReport::new(id, lhs, rhs, self.tolerance, self.digest.clone())
    }

    /// `C(T1)`, failing when the superposition vanishes.
    fn coherence_t1(&self) -> Result<f64> {
        self.superposition
            .normalized
            .as_ref()
            .map(|t1| pure_state_coherence(t1).value())
            .ok_or(CoherenceError::ZeroVector { norm: self.superposition.norm, branch: Some("plus") })
    }

    /// `|alpha|^2 C(phi) + |beta|^2 C(psi)`.
    fn average_coherence(&self) -> f64 {
        self.c.alpha_sq() * self.coherence_phi + self.c.beta_sq() * self.coherence_psi
    }

    /// `2 [|alpha|^2 C(phi) + |beta|^2 C(psi) + h(|alpha|^2)]`.
    fn doubled_mixture_bound(&self) -> Result<f64> {
        Ok(2.0 * (self.average_coherence() + binary_entropy(self.c.alpha_sq())?.value()))
    }

    fn require_disjoint(&self, bound: BoundId) -> Result<()> {
        if self.class.tag != PairTag::DisjointSupport {
            return Err(CoherenceError::WrongPairClass { bound: bound.name(), required: "disjoint-support" });
        }
        Ok(())
    }

    fn theorem1(&self) -> Result<BoundReport> {
        self.require_disjoint(BoundId::T1Equality)?;
        let lhs = self.coherence_t1()?;
        let rhs = self.average_coherence() + binary_entropy(self.c.alpha_sq())?.value();
        Ok(self.report(BoundId::T1Equality, lhs, rhs))
    }

    fn gain(&self) -> Result<BoundReport> {
        self.require_disjoint(BoundId::GainLe1)?;
        let lhs = self.coherence_t1()? - self.average_coherence();
        Ok(self.report(BoundId::GainLe1, lhs, 1.0))
    }

    fn theorem2(&self) -> Result<BoundReport> {
        if self.class.overlap.norm() > tolerance::ORTHOGONAL {
            return Err(CoherenceError::WrongPairClass { bound: BoundId::T2Upper.name(), required: "orthogonal" });
        }
        let lhs = self.coherence_t1()?;
        Ok(self.report(BoundId::T2Upper, lhs, self.doubled_mixture_bound()?))
    }

    fn weighted_t1(&self) -> Result<f64> {
        let s = self.superposition.norm;
        if s <= tolerance::ZERO_VECTOR {
            return Err(CoherenceError::ZeroVector { norm: s, branch: Some("plus") });
        }
        Ok(s * s * self.coherence_t1()?)
    }

    fn theorem3(&self) -> Result<BoundReport> {
        let lhs = self.weighted_t1()?;
        Ok(self.report(BoundId::T3Upper, lhs, self.doubled_mixture_bound()?))
    }

    fn theorem4(&self) -> Result<(BoundReport, BoundReport)> {
        let lhs = self.weighted_t1()?;
        let s_sq = self.superposition.norm.powi(2);
        let branch = |kept_sq: f64, kept_c: f64, other_sq: f64, other_c: f64| -> Result<f64> {
            let total = s_sq + other_sq;
            Ok(0.5 * kept_sq * kept_c - other_sq * other_c - total * binary_entropy(other_sq / total)?.value())
        };
        let (a2, b2) = (self.c.alpha_sq(), self.c.beta_sq());
        let rhs_a = branch(a2, self.coherence_phi, b2, self.coherence_psi)?;
        let rhs_b = branch(b2, self.coherence_psi, a2, self.coherence_phi)?;
        Ok((self.report(BoundId::T4LowerA, lhs, rhs_a), self.report(BoundId::T4LowerB, lhs, rhs_b)))
    }
}

/// Coherence of a superposition of disjoint-support states is exactly the
/// weighted coherence plus the binary entropy of the weights.
pub fn theorem1_equality(
    c: &SuperpositionCoefficients,
    phi: &StateVector,
    psi: &StateVector,
    tolerance: f64,
) -> Result<BoundReport> {
    Evaluation::new(c, phi, psi, tolerance)?.theorem1()
}

/// Coherence gained by superposing disjoint-support states is at most one bit.
pub fn max_gain(c: &SuperpositionCoefficients, phi: &StateVector, psi: &StateVector, tolerance: f64) -> Result<BoundReport> {
    Evaluation::new(c, phi, psi, tolerance)?.gain()
}

pub fn theorem2_upper(
    c: &SuperpositionCoefficients,
    phi: &StateVector,
    psi: &StateVector,
    tolerance: f64,
) -> Result<BoundReport> {
    Evaluation::new(c, phi, psi, tolerance)?.theorem2()
}

pub fn theorem3_upper(
    c: &SuperpositionCoefficients,
    phi: &StateVector,
    psi: &StateVector,
    tolerance: f64,
) -> Result<BoundReport> {
    Evaluation::new(c, phi, psi, tolerance)?.theorem3()
}

/// Both branches of the lower bound. The bound itself is the larger RHS,
/// see [`theorem4_bound`].
pub fn theorem4_lower(
    c: &SuperpositionCoefficients,
    phi: &StateVector,
    psi: &StateVector,
    tolerance: f64,
) -> Result<(BoundReport, BoundReport)> {
    Evaluation::new(c, phi, psi, tolerance)?.theorem4()
}

/// `max(rhs_A, rhs_B)`.
pub fn theorem4_bound(branches: &(BoundReport, BoundReport)) -> f64 {
    branches.0.rhs.max(branches.1.rhs)
}

/// Evaluates a single bound by id.
pub fn evaluate(
    id: BoundId,
    c: &SuperpositionCoefficients,
    phi: &StateVector,
    psi: &StateVector,
    tolerance: f64,
) -> Result<BoundReport> {
    let eval = Evaluation::new(c, phi, psi, tolerance)?;
    match id {
        BoundId::T1Equality => eval.theorem1(),
        BoundId::GainLe1 => eval.gain(),
        BoundId::T2Upper => eval.theorem2(),
        BoundId::T3Upper => eval.theorem3(),
        BoundId::T4LowerA => eval.theorem4().map(|(a, _)| a),
        BoundId::T4LowerB => eval.theorem4().map(|(_, b)| b),
    }
}

/// Classification plus every bound that applies to it.
#[derive(Debug, Clone, PartialEq)]
pub struct PairEvaluation {
    pub class: PairClass,
    pub reports: Vec<BoundReport>,
}

/// Routes the triple to every applicable bound: `T1_EQUALITY` and
/// `GAIN_LE_1` for disjoint support, `T2_UPPER` for orthogonal pairs,
/// `T3_UPPER` for non-orthogonal pairs and both `T4` branches whenever the
/// superposition does not vanish.
pub fn evaluate_pair(
    c: &SuperpositionCoefficients,
    phi: &StateVector,
    psi: &StateVector,
    tolerance: f64,
) -> Result<PairEvaluation> {
    let eval = Evaluation::new(c, phi, psi, tolerance)?;
    let mut reports = Vec::with_capacity(5);
    match eval.class.tag {
        PairTag::DisjointSupport => {
            reports.push(eval.theorem1()?);
            reports.push(eval.gain()?);
            reports.push(eval.theorem2()?);
        }
        PairTag::OrthogonalSameSpace => reports.push(eval.theorem2()?),
        PairTag::NonOrthogonal => {
            if eval.superposition.norm > tolerance::ZERO_VECTOR {
                reports.push(eval.theorem3()?);
            }
        }
    }
    if eval.superposition.norm > tolerance::ZERO_VECTOR {
        let (a, b) = eval.theorem4()?;
        reports.push(a);
        reports.push(b);
    }
    Ok(PairEvaluation { class: eval.class, reports })
}

pub fn evaluate_all(
    c: &SuperpositionCoefficients,
    phi: &StateVector,
    psi: &StateVector,
    tolerance: f64,
) -> Result<Vec<BoundReport>> {
    evaluate_pair(c, phi, psi, tolerance).map(|e| e.reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexScalar;

    const TOL: f64 = tolerance::BOUND;

    fn h(x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            0.0
        } else {
            -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
        }
    }

    fn half() -> SuperpositionCoefficients {
        SuperpositionCoefficients::real(0.5).unwrap()
    }
    fn unit_alpha() -> SuperpositionCoefficients {
        SuperpositionCoefficients::real(1.0).unwrap()
    }
    fn ket(d: usize, i: usize) -> StateVector {
        StateVector::basis(d, i).unwrap()
    }
    fn real(v: &[f64]) -> StateVector {
        StateVector::from_real(v).unwrap()
    }

    fn ids(reports: &[BoundReport]) -> Vec<BoundId> {
        reports.iter().map(|r| r.bound_id).collect()
    }

    #[test]
    fn theorem1_basis_superposition() {
        let r = theorem1_equality(&half(), &ket(2, 0), &ket(2, 1), TOL).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15);
        assert!((r.rhs - 1.0).abs() < 1e-15);
        assert!(r.satisfied);
    }

    #[test]
    fn theorem1_degenerate_coefficient() {
        let phi = real(&[0.6, 0.8, 0.0, 0.0]);
        let psi = real(&[0.0, 0.0, 1.0, 1.0]);
        let r = theorem1_equality(&unit_alpha(), &phi, &psi, TOL).unwrap();
        let c_phi = h(0.36);
        assert!((r.lhs - c_phi).abs() < 1e-14);
        assert!((r.rhs - c_phi).abs() < 1e-14);
    }

    #[test]
    fn theorem1_four_dimensional_blocks() {
        let phi = real(&[1.0, 1.0, 0.0, 0.0]);
        let psi = real(&[0.0, 0.0, 1.0, 1.0]);
        let c = SuperpositionCoefficients::real(0.3).unwrap();
        let r = theorem1_equality(&c, &phi, &psi, TOL).unwrap();
        // Omega has probabilities (0.15, 0.15, 0.35, 0.35), evaluated directly.
        let direct = -2.0 * 0.15 * 0.15f64.log2() - 2.0 * 0.35 * 0.35f64.log2();
        let expected = 0.3 + 0.7 + h(0.3);
        assert!((expected - 1.881291).abs() < 1e-6);
        assert!((r.lhs - direct).abs() < 1e-14);
        assert!((r.rhs - expected).abs() < 1e-14);
        assert!(r.slack <= 1e-12);
    }

    #[test]
    fn theorem1_rejects_overlapping_support() {
        let plus = real(&[1.0, 1.0]);
        let minus = real(&[1.0, -1.0]);
        assert!(matches!(
            theorem1_equality(&half(), &plus, &minus, TOL),
            Err(CoherenceError::WrongPairClass { .. })
        ));
        assert!(matches!(max_gain(&half(), &plus, &minus, TOL), Err(CoherenceError::WrongPairClass { .. })));
    }

    #[test]
    fn max_gain_saturates_on_basis_superposition() {
        let r = max_gain(&half(), &ket(2, 0), &ket(2, 1), TOL).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15);
        assert_eq!(r.rhs, 1.0);
        assert!(r.slack.abs() < 1e-15);
        let r = max_gain(&unit_alpha(), &ket(2, 0), &ket(2, 1), TOL).unwrap();
        assert_eq!(r.lhs, 0.0);
    }

    #[test]
    fn theorem2_examples() {
        let plus = real(&[1.0, 1.0]);
        let minus = real(&[1.0, -1.0]);
        let r = theorem2_upper(&half(), &plus, &minus, TOL).unwrap();
        assert!(r.lhs.abs() < 1e-12);
        assert!((r.rhs - 4.0).abs() < 1e-14);

        let r = theorem2_upper(&half(), &ket(2, 0), &ket(2, 1), TOL).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15);
        assert!((r.rhs - 2.0).abs() < 1e-15);

        assert!(matches!(
            theorem2_upper(&half(), &ket(2, 0), &plus, TOL),
            Err(CoherenceError::WrongPairClass { .. })
        ));
    }

    #[test]
    fn theorem3_parallel_states() {
        let plus = real(&[1.0, 1.0]);
        let r = theorem3_upper(&half(), &plus, &plus, TOL).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-14);
        assert!((r.rhs - 4.0).abs() < 1e-14);
    }

    #[test]
    fn theorem3_zero_and_plus() {
        // Brute force: raw = (1/sqrt2)(|0> + |+>) = (1/sqrt2 + 1/2, 1/2).
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let raw = [r2 + 0.5, 0.5];
        let s_sq = raw[0] * raw[0] + raw[1] * raw[1];
        let p0 = raw[0] * raw[0] / s_sq;
        let lhs = s_sq * h(p0);
        let rhs = 2.0 * (0.5 * 0.0 + 0.5 * 1.0 + 1.0);
        let r = theorem3_upper(&half(), &ket(2, 0), &real(&[1.0, 1.0]), TOL).unwrap();
        assert!((r.lhs - lhs).abs() < 1e-14);
        assert!((r.rhs - rhs).abs() < 1e-14);
        assert!(r.slack >= 0.0);
    }

    #[test]
    fn theorem3_vanishing_superposition() {
        let c = SuperpositionCoefficients::new(
            ComplexScalar::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ComplexScalar::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
        )
        .unwrap();
        let plus = real(&[1.0, 1.0]);
        assert!(matches!(theorem3_upper(&c, &plus, &plus, TOL), Err(CoherenceError::ZeroVector { .. })));
        assert!(matches!(theorem4_lower(&c, &plus, &plus, TOL), Err(CoherenceError::ZeroVector { .. })));
    }

    #[test]
    fn theorem4_basis_superposition() {
        let (a, b) = theorem4_lower(&half(), &ket(2, 0), &ket(2, 1), TOL).unwrap();
        let expected = -1.5 * (3f64.log2() - 2.0 / 3.0);
        assert!((a.lhs - 1.0).abs() < 1e-15);
        assert!((a.rhs - expected).abs() < 1e-14);
        assert!((expected + 1.377443).abs() < 1e-6);
        assert!((b.rhs - expected).abs() < 1e-14);
        assert!(a.satisfied && b.satisfied);
        assert!((theorem4_bound(&(a, b)) - expected).abs() < 1e-14);
    }

    #[test]
    fn theorem4_degenerate_coefficient() {
        let phi = real(&[0.6, 0.8]);
        let psi = real(&[1.0, 1.0]);
        let (a, _) = theorem4_lower(&unit_alpha(), &phi, &psi, TOL).unwrap();
        let c_phi = h(0.36);
        assert!((a.lhs - c_phi).abs() < 1e-14);
        assert!((a.rhs - c_phi / 2.0).abs() < 1e-14);
    }

    #[test]
    fn evaluate_all_routing() {
        let plus = real(&[1.0, 1.0]);
        let minus = real(&[1.0, -1.0]);
        assert_eq!(
            ids(&evaluate_all(&half(), &ket(2, 0), &ket(2, 1), TOL).unwrap()),
            vec![BoundId::T1Equality, BoundId::GainLe1, BoundId::T2Upper, BoundId::T4LowerA, BoundId::T4LowerB]
        );
        assert_eq!(
            ids(&evaluate_all(&half(), &plus, &minus, TOL).unwrap()),
            vec![BoundId::T2Upper, BoundId::T4LowerA, BoundId::T4LowerB]
        );
        assert_eq!(
            ids(&evaluate_all(&half(), &ket(2, 0), &plus, TOL).unwrap()),
            vec![BoundId::T3Upper, BoundId::T4LowerA, BoundId::T4LowerB]
        );
    }

    #[test]
    fn report_verdicts_follow_slack_sign() {
        let up = BoundReport::new(BoundId::T2Upper, 1.0, 1.0 - 2e-9, 1e-9, String::new());
        assert!(!up.satisfied);
        let up = BoundReport::new(BoundId::T2Upper, 1.0, 1.0 - 5e-10, 1e-9, String::new());
        assert!(up.satisfied);
        let low = BoundReport::new(BoundId::T4LowerA, 0.0, 1.0, 1e-9, String::new());
        assert_eq!(low.slack, -1.0);
        assert!(!low.satisfied);
        let eq = BoundReport::new(BoundId::T1Equality, 1.0, 1.0 + 2e-9, 1e-9, String::new());
        assert!(!eq.satisfied);
        assert!(eq.slack > 0.0 && eq.margin() < 0.0);
    }

    #[test]
    fn bound_id_parsing() {
        assert_eq!("gain_le_1".parse::<BoundId>().unwrap(), BoundId::GainLe1);
        assert_eq!("T4-LOWER-B".parse::<BoundId>().unwrap(), BoundId::T4LowerB);
        assert!("T5".parse::<BoundId>().is_err());
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = inputs_digest(&half(), &ket(2, 0), &ket(2, 1));
        assert_eq!(a, inputs_digest(&half(), &ket(2, 0), &ket(2, 1)));
        assert_eq!(a.len(), 16);
        assert_ne!(a, inputs_digest(&half(), &ket(2, 1), &ket(2, 0)));
    }
}
