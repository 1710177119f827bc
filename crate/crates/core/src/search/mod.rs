//! Saturation search: drive a bound's slack as low as possible with
//! multi-start Nelder-Mead over an unconstrained encoding of the inputs.
//!
//! A parameter vector of length `2 + 4d` holds `(theta, phi)` for the
//! coefficients followed by interleaved real/imaginary parts of both raw
//! states. [`parameterize`] projects every vector onto a feasible triple, so
//! the optimizer never sees an invalid input; points that cannot be projected
//! (a zero block) evaluate to `+inf`.

mod nelder_mead;

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use nelder_mead::{minimize, Minimum, NelderMeadOptions};

use crate::bounds::{evaluate, BoundId, BoundReport};
use crate::ensembles::{complex_gaussian, orthogonalize_against, sub_seed, PairKind, Seed};
use crate::error::{CoherenceError, Result};
use crate::linalg::{normalize, ComplexScalar, StateVector};
use crate::superpose::SuperpositionCoefficients;
use crate::tolerance;

pub const DEFAULT_RESTARTS: usize = 16;
pub const DEFAULT_ITERATIONS: usize = 2000;

/// Pair kind searched by default for each bound.
pub fn default_pair_kind(bound: BoundId) -> PairKind {
    match bound {
        BoundId::T1Equality | BoundId::GainLe1 => PairKind::DisjointSupport,
        BoundId::T2Upper => PairKind::OrthogonalSameSpace,
        BoundId::T3Upper => PairKind::NonOrthogonal,
        BoundId::T4LowerA | BoundId::T4LowerB => PairKind::Arbitrary,
    }
}

/// Whether `bound` is stated for pairs of `kind`.
pub fn is_compatible(bound: BoundId, kind: PairKind) -> bool {
    match bound {
        BoundId::T1Equality | BoundId::GainLe1 => kind == PairKind::DisjointSupport,
        BoundId::T2Upper => matches!(kind, PairKind::DisjointSupport | PairKind::OrthogonalSameSpace),
        BoundId::T3Upper => matches!(kind, PairKind::NonOrthogonal | PairKind::Arbitrary),
        BoundId::T4LowerA | BoundId::T4LowerB => true,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSpec {
    pub bound_id: BoundId,
    pub dim: usize,
    pub pair_kind: PairKind,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: Seed,
    /// Block sizes for disjoint-support pairs; `None` splits the basis in half.
    pub split: Option<(usize, usize)>,
    pub tolerance: f64,
}

impl SearchSpec {
    pub fn new(bound_id: BoundId, dim: usize, seed: Seed) -> Self {
        Self {
            bound_id,
            dim,
            pair_kind: default_pair_kind(bound_id),
            restarts: DEFAULT_RESTARTS,
            iterations: DEFAULT_ITERATIONS,
            seed,
            split: None,
            tolerance: tolerance::BOUND,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(CoherenceError::BadDimension { dim: self.dim, min: 2 });
        }
        if !is_compatible(self.bound_id, self.pair_kind) {
            return Err(CoherenceError::IncompatibleSearch {
                bound: self.bound_id.name(),
                kind: self.pair_kind.name(),
            });
        }
        if self.restarts == 0 || self.iterations == 0 {
            return Err(CoherenceError::InvalidConfig("restarts and iterations must be positive".into()));
        }
        self.encoding().map(|_| ())
    }

    pub fn encoding(&self) -> Result<Encoding> {
        Encoding::new(self.dim, self.pair_kind, self.split)
    }
}

/// How a parameter vector maps onto an input triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Encoding {
    pub dim: usize,
    pub pair_kind: PairKind,
    /// Support blocks, only used for disjoint-support pairs.
    pub split: (usize, usize),
}

impl Encoding {
    pub fn new(dim: usize, pair_kind: PairKind, split: Option<(usize, usize)>) -> Result<Self> {
        if dim < 2 {
            return Err(CoherenceError::BadDimension { dim, min: 2 });
        }
        let split = split.unwrap_or((dim / 2, dim - dim / 2));
        let (left, right) = split;
        if left == 0 || right == 0 || left + right > dim {
            return Err(CoherenceError::BadSplit { left, right, dim });
        }
        Ok(Self { dim, pair_kind, split })
    }

    pub fn len(&self) -> usize {
        2 + 4 * self.dim
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A feasible input triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchInputs {
    pub coefficients: SuperpositionCoefficients,
    pub phi: StateVector,
    pub psi: StateVector,
}

fn unpack(block: &[f64]) -> Vec<ComplexScalar> {
    block.chunks_exact(2).map(|p| ComplexScalar::new(p[0], p[1])).collect()
}

/// Maps an unconstrained vector onto a valid `(c, phi, psi)`.
pub fn parameterize(x: &[f64], encoding: &Encoding) -> Result<SearchInputs> {
    if x.len() != encoding.len() {
        return Err(CoherenceError::BadParameterLength { len: x.len(), expected: encoding.len() });
    }
    let d = encoding.dim;
    let coefficients = SuperpositionCoefficients::from_angles(x[0], x[1]);
    let mut raw_phi = unpack(&x[2..2 + 2 * d]);
    let mut raw_psi = unpack(&x[2 + 2 * d..]);

    let (phi, psi) = match encoding.pair_kind {
        PairKind::DisjointSupport => {
            let (left, right) = encoding.split;
            let zero = ComplexScalar::new(0.0, 0.0);
            raw_phi[left..].fill(zero);
            raw_psi[..left].fill(zero);
            raw_psi[left + right..].fill(zero);
            (normalize(&raw_phi)?, normalize(&raw_psi)?)
        }
        PairKind::OrthogonalSameSpace => {
            let phi = normalize(&raw_phi)?;
            let psi = orthogonalize_against(&phi, &mut raw_psi)
                .ok_or(CoherenceError::ZeroVector { norm: 0.0, branch: None })?;
            (phi, psi)
        }
        PairKind::NonOrthogonal | PairKind::Arbitrary => (normalize(&raw_phi)?, normalize(&raw_psi)?),
    };
    Ok(SearchInputs { coefficients, phi, psi })
}

/// Parameter vector that [`parameterize`] maps back onto `inputs`. The phase
/// of `alpha` is moved onto `phi`, which leaves the superposition unchanged.
pub fn encode(inputs: &SearchInputs) -> Vec<f64> {
    let c = &inputs.coefficients;
    let alpha = c.alpha();
    let alpha_phase = if alpha.norm() > 0.0 { alpha / alpha.norm() } else { ComplexScalar::new(1.0, 0.0) };
    let theta = c.beta().norm().atan2(alpha.norm());
    let phi_angle = c.beta().arg();
    let mut x = vec![theta, phi_angle];
    for z in inputs.phi.amps() {
        let z = z * alpha_phase;
        x.extend([z.re, z.im]);
    }
    for z in inputs.psi.amps() {
        x.extend([z.re, z.im]);
    }
    x
}

/// Seeded starting point: uniform angles and Gaussian amplitudes.
pub fn random_start<R: Rng + ?Sized>(rng: &mut R, encoding: &Encoding) -> Vec<f64> {
    let mut x = Vec::with_capacity(encoding.len());
    x.push(FRAC_PI_2 * rng.random::<f64>());
    x.push(TAU * rng.random::<f64>());
    for _ in 0..2 * encoding.dim {
        let z = complex_gaussian(rng);
        x.extend([z.re, z.im]);
    }
    x
}

/// Best point of one restart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub seed: Seed,
    pub best_margin: f64,
    pub iterations: usize,
    /// Best margin after each iteration.
    #[serde(skip)]
    pub history: Vec<f64>,
    #[serde(skip)]
    best_x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub bound_id: BoundId,
    /// Slack of [`Self::best_report`], in the report's own sign convention.
    pub best_slack: f64,
    pub best_report: BoundReport,
    pub best_inputs: SearchInputs,
    pub best_restart: usize,
    pub trace: Vec<RestartTrace>,
}

impl SearchResult {
    /// True when the search found inputs that break the bound.
    pub fn is_violation(&self) -> bool {
        !self.best_report.satisfied
    }
}

/// What the search minimizes: [`BoundReport::margin`], so upper and lower
/// bounds are pushed toward zero slack and the equality toward its largest
/// residual.
fn objective(spec: &SearchSpec, encoding: &Encoding, x: &[f64]) -> f64 {
    parameterize(x, encoding)
        .and_then(|inp| evaluate(spec.bound_id, &inp.coefficients, &inp.phi, &inp.psi, spec.tolerance))
        .map(|r| r.margin())
        .unwrap_or(f64::INFINITY)
}

pub fn minimize_slack(spec: &SearchSpec) -> Result<SearchResult> {
    spec.validate()?;
    let encoding = spec.encoding()?;
    let options = NelderMeadOptions {
        max_iterations: spec.iterations,
        ..NelderMeadOptions::default()
    };

    let trace: Vec<RestartTrace> = (0..spec.restarts)
        .into_par_iter()
        .map(|restart| {
            let seed = sub_seed(spec.seed, restart as u64);
            let start = random_start(&mut seed.rng(), &encoding);
            let found = minimize(|x| objective(spec, &encoding, x), &start, &options);
            RestartTrace {
                restart,
                seed,
                best_margin: found.value,
                iterations: found.iterations,
                history: found.history,
                best_x: found.x,
            }
        })
        .collect();

    // Lowest margin wins; ties go to the earliest restart.
    let best = trace
        .iter()
        .fold(None::<&RestartTrace>, |best, t| match best {
            Some(b) if b.best_margin <= t.best_margin => Some(b),
            _ => Some(t),
        })
        .expect("at least one restart");
    if !best.best_margin.is_finite() {
        return Err(CoherenceError::InvalidConfig(format!(
            "no feasible point found for {} over {} pairs",
            spec.bound_id, spec.pair_kind
        )));
    }

    let best_inputs = parameterize(&best.best_x, &encoding)?;
    let best_report = evaluate(
        spec.bound_id,
        &best_inputs.coefficients,
        &best_inputs.phi,
        &best_inputs.psi,
        spec.tolerance,
    )?;
    Ok(SearchResult {
        bound_id: spec.bound_id,
        best_slack: best_report.slack,
        best_restart: best.restart,
        best_report,
        best_inputs,
        trace,
    })
}
