//! Seeded random states, pairs and coefficients, and the Monte-Carlo trial
//! runner.
//!
//! Every random draw goes through a `ChaCha8Rng` seeded from a 64-bit seed.
//! Trial `k` of a run owns its own generator, seeded with
//! [`sub_seed`]`(master, k)`, so results do not depend on how trials are
//! scheduled across threads.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{evaluate_pair, BoundReport};
use crate::error::{CoherenceError, Result};
use crate::linalg::{normalize, raw_norm, ComplexScalar, StateVector};
use crate::superpose::{PairTag, SuperpositionCoefficients};
use crate::tolerance;

/// Attempts before a pair sampler gives up.
const MAX_RESAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// SplitMix64 finalizer. A bijection on 64-bit words.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`. Distinct indices give distinct
/// sub-seeds because both the offset and the mix are bijections.
pub fn sub_seed(master: Seed, index: u64) -> Seed {
    Seed(mix64(mix64(master.0).wrapping_add(index)))
}

/// Which kind of pair an ensemble draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairKind {
    DisjointSupport,
    OrthogonalSameSpace,
    NonOrthogonal,
    Arbitrary,
}

impl PairKind {
    pub const ALL: [PairKind; 4] = [
        PairKind::DisjointSupport,
        PairKind::OrthogonalSameSpace,
        PairKind::NonOrthogonal,
        PairKind::Arbitrary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PairKind::DisjointSupport => "DisjointSupport",
            PairKind::OrthogonalSameSpace => "OrthogonalSameSpace",
            PairKind::NonOrthogonal => "NonOrthogonal",
            PairKind::Arbitrary => "Arbitrary",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairKind {
    type Err = CoherenceError;

    fn from_str(s: &str) -> Result<Self> {
        let wanted: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        PairKind::ALL
            .into_iter()
            .find(|k| k.name().to_ascii_lowercase() == wanted)
            .ok_or_else(|| CoherenceError::InvalidConfig(format!("unknown pair kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleConfig {
    pub dim: usize,
    pub trials: u64,
    pub pair_kind: PairKind,
    pub seed: Seed,
    /// Block sizes `(d1, d2)` for disjoint-support pairs. `None` draws a
    /// fresh split per trial.
    pub split: Option<(usize, usize)>,
    /// Shuffle basis indices of disjoint-support pairs.
    pub permute: bool,
    pub tolerance: f64,
}

impl EnsembleConfig {
    pub fn new(dim: usize, trials: u64, pair_kind: PairKind, seed: Seed) -> Self {
        Self {
            dim,
            trials,
            pair_kind,
            seed,
            split: None,
            permute: false,
            tolerance: tolerance::BOUND,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(CoherenceError::BadDimension { dim: self.dim, min: 2 });
        }
        if let Some((left, right)) = self.split {
            check_split(self.dim, left, right)?;
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(CoherenceError::InvalidConfig(format!("tolerance {} must be non-negative", self.tolerance)));
        }
        Ok(())
    }
}

fn check_split(dim: usize, left: usize, right: usize) -> Result<()> {
    if left == 0 || right == 0 || left + right > dim {
        return Err(CoherenceError::BadSplit { left, right, dim });
    }
    Ok(())
}

/// Standard complex Gaussian (`E|z|^2 = 1`).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> ComplexScalar {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    ComplexScalar::new(re, im) * FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<ComplexScalar> {
    (0..dim).map(|_| complex_gaussian(rng)).collect()
}

/// Haar-random pure state: i.i.d. complex Gaussians, normalized.
pub fn sample_haar_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<StateVector> {
    if dim == 0 {
        return Err(CoherenceError::BadDimension { dim, min: 1 });
    }
    for _ in 0..MAX_RESAMPLES {
        if let Ok(state) = normalize(&gaussian_vector(rng, dim)) {
            return Ok(state);
        }
    }
    Err(CoherenceError::DegeneratePair { attempts: MAX_RESAMPLES })
}

pub fn haar_random_state(dim: usize, seed: Seed) -> Result<StateVector> {
    sample_haar_state(&mut seed.rng(), dim)
}

/// Removes the `phi` component of `raw`, twice, and normalizes. Returns
/// `None` when nothing is left.
pub(crate) fn orthogonalize_against(phi: &StateVector, raw: &mut [ComplexScalar]) -> Option<StateVector> {
    let scale = raw_norm(raw);
    for _ in 0..2 {
        let overlap: ComplexScalar = phi.amps().iter().zip(raw.iter()).map(|(a, b)| a.conj() * b).sum();
        for (r, a) in raw.iter_mut().zip(phi.amps()) {
            *r -= overlap * a;
        }
    }
    if raw_norm(raw) <= tolerance::ZERO_VECTOR * scale.max(1.0) {
        return None;
    }
    normalize(raw).ok()
}

pub fn sample_orthogonal_pair<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<(StateVector, StateVector)> {
    if dim < 2 {
        return Err(CoherenceError::BadDimension { dim, min: 2 });
    }
    let phi = sample_haar_state(rng, dim)?;
    for _ in 0..MAX_RESAMPLES {
        let mut raw = gaussian_vector(rng, dim);
        if let Some(psi) = orthogonalize_against(&phi, &mut raw) {
            let overlap: ComplexScalar = phi.amps().iter().zip(psi.amps()).map(|(a, b)| a.conj() * b).sum();
            if overlap.norm() <= tolerance::ZERO_VECTOR {
                return Ok((phi, psi));
            }
        }
    }
    Err(CoherenceError::DegeneratePair { attempts: MAX_RESAMPLES })
}

/// Haar `phi` and a Haar vector orthogonalized against it.
pub fn random_orthogonal_pair(dim: usize, seed: Seed) -> Result<(StateVector, StateVector)> {
    sample_orthogonal_pair(&mut seed.rng(), dim)
}

/// Draws split sizes `d1 >= 1`, `d2 >= 1`, `d1 + d2 <= dim`.
pub fn sample_split<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<(usize, usize)> {
    if dim < 2 {
        return Err(CoherenceError::BadDimension { dim, min: 2 });
    }
    let left = rng.random_range(1..dim);
    let right = rng.random_range(1..=dim - left);
    Ok((left, right))
}

/// `phi` on indices `[0, d1)`, `psi` on `[d1, d1 + d2)`, then an optional
/// shared shuffle of the basis.
pub fn sample_disjoint_support_pair<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    split: (usize, usize),
    permute: bool,
) -> Result<(StateVector, StateVector)> {
    let (left, right) = split;
    check_split(dim, left, right)?;
    let block = |rng: &mut R, start: usize, len: usize| -> Result<Vec<ComplexScalar>> {
        let local = sample_haar_state(rng, len)?;
        let mut amps = vec![ComplexScalar::new(0.0, 0.0); dim];
        amps[start..start + len].copy_from_slice(local.amps());
        Ok(amps)
    };
    let mut phi = block(rng, 0, left)?;
    let mut psi = block(rng, left, right)?;
    if permute {
        let mut order: Vec<usize> = (0..dim).collect();
        order.shuffle(rng);
        phi = order.iter().map(|&i| phi[i]).collect();
        psi = order.iter().map(|&i| psi[i]).collect();
    }
    Ok((StateVector::new(phi)?, StateVector::new(psi)?))
}

/// Disjoint-support pair for `config`, seeded by `config.seed`.
pub fn random_disjoint_support_pair(config: &EnsembleConfig) -> Result<(StateVector, StateVector)> {
    let mut rng = config.seed.rng();
    let split = match config.split {
        Some(split) => split,
        None => sample_split(&mut rng, config.dim)?,
    };
    sample_disjoint_support_pair(&mut rng, config.dim, split, config.permute)
}

/// Two independent Haar states, resampled until their overlap exceeds the
/// orthogonality threshold.
pub fn sample_non_orthogonal_pair<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<(StateVector, StateVector)> {
    for _ in 0..MAX_RESAMPLES {
        let phi = sample_haar_state(rng, dim)?;
        let psi = sample_haar_state(rng, dim)?;
        let overlap: ComplexScalar = phi.amps().iter().zip(psi.amps()).map(|(a, b)| a.conj() * b).sum();
        if overlap.norm() > tolerance::ORTHOGONAL {
            return Ok((phi, psi));
        }
    }
    Err(CoherenceError::DegeneratePair { attempts: MAX_RESAMPLES })
}

/// `alpha = cos theta`, `beta = sin theta e^{i phi}`, with `theta` uniform
/// on `[0, pi/2]` and `phi` uniform on `[0, 2 pi)`.
pub fn sample_coefficients<R: Rng + ?Sized>(rng: &mut R) -> SuperpositionCoefficients {
    let theta = FRAC_PI_2 * rng.random::<f64>();
    let phi = TAU * rng.random::<f64>();
    SuperpositionCoefficients::from_angles(theta, phi)
}

pub fn random_coefficients(seed: Seed) -> SuperpositionCoefficients {
    sample_coefficients(&mut seed.rng())
}

/// Input triple for one trial of `config`, drawn from `rng`.
pub fn sample_inputs<R: Rng + ?Sized>(
    rng: &mut R,
    config: &EnsembleConfig,
) -> Result<(SuperpositionCoefficients, StateVector, StateVector)> {
    let (phi, psi) = match config.pair_kind {
        PairKind::DisjointSupport => {
            let split = match config.split {
                Some(split) => split,
                None => sample_split(rng, config.dim)?,
            };
            sample_disjoint_support_pair(rng, config.dim, split, config.permute)?
        }
        PairKind::OrthogonalSameSpace => sample_orthogonal_pair(rng, config.dim)?,
        PairKind::NonOrthogonal => sample_non_orthogonal_pair(rng, config.dim)?,
        PairKind::Arbitrary => (sample_haar_state(rng, config.dim)?, sample_haar_state(rng, config.dim)?),
    };
    Ok((sample_coefficients(rng), phi, psi))
}

/// Outcome of one trial. Errors are captured per trial so a single
/// degenerate draw cannot abort a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub index: u64,
    pub seed: Seed,
    pub pair_class: Option<PairTag>,
    pub reports: Vec<BoundReport>,
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn violations(&self) -> usize {
        self.reports.iter().filter(|r| !r.satisfied).count()
    }
}

pub fn run_trial(config: &EnsembleConfig, index: u64) -> TrialRecord {
    let seed = sub_seed(config.seed, index);
    let outcome = sample_inputs(&mut seed.rng(), config)
        .and_then(|(c, phi, psi)| evaluate_pair(&c, &phi, &psi, config.tolerance));
    match outcome {
        Ok(eval) => TrialRecord {
            index,
            seed,
            pair_class: Some(eval.class.tag),
            reports: eval.reports,
            error: None,
        },
        Err(err) => TrialRecord {
            index,
            seed,
            pair_class: None,
            reports: Vec::new(),
            error: Some(err.to_string()),
        },
    }
}

/// Runs every trial on the global rayon pool, ordered by trial index.
pub fn run_ensemble(config: &EnsembleConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    Ok((0..config.trials).into_par_iter().map(|k| run_trial(config, k)).collect())
}

/// [`run_ensemble`] on a dedicated pool of `workers` threads.
pub fn run_ensemble_with_workers(config: &EnsembleConfig, workers: usize) -> Result<Vec<TrialRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CoherenceError::InvalidConfig(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| run_ensemble(config))
}
