//! Randomized ensembles over every (pair kind, dimension) combination.

use std::collections::BTreeMap;

use coherence_lab_core::ensembles::sub_seed;
use coherence_lab_core::{
    run_ensemble, run_ensemble_with_workers, tolerance, BoundId, BoundKind, EnsembleConfig, PairKind, Seed,
    TrialRecord,
};
use serde::Serialize;
use serde_json::Value;

use super::{load_config, output};
use crate::config::{parse_bool, parse_split};
use crate::error::{CliError, Result};
use crate::report::{timestamp, to_value, RunReport};
use crate::{check_tolerance, resolve_seed, Format, Outcome, VerifyArgs};

pub const DEFAULT_TRIALS: u64 = 10_000;
pub const DEFAULT_DIMS: [usize; 4] = [2, 4, 8, 16];
/// Violating trials listed per summary; the counts are always complete.
const MAX_LISTED: usize = 20;

const KEYS: &[&str] = &[
    "seed", "trials", "dims", "pair_kinds", "bounds", "tolerance", "split", "permute", "out", "format",
];

/// Fully resolved run parameters, echoed into the report.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub seed: Seed,
    pub trials: u64,
    pub dims: Vec<usize>,
    pub pair_kinds: Vec<PairKind>,
    pub bounds: Vec<BoundId>,
    pub tolerance: f64,
    #[serde(serialize_with = "serialize_split")]
    pub split: Option<(usize, usize)>,
    pub permute: bool,
}

fn serialize_split<S: serde::Serializer>(split: &Option<(usize, usize)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match split {
        Some(pair) => pair.serialize(s),
        None => s.serialize_str("random"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSummary {
    pub bound_id: BoundId,
    pub evaluated: u64,
    pub violations: u64,
    /// Smallest slack seen, or the largest residual for the equality.
    pub worst_slack: Option<f64>,
    pub worst_trial: Option<u64>,
    pub worst_seed: Option<Seed>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolatingTrial {
    pub trial: u64,
    pub seed: Seed,
    pub bound_id: BoundId,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub pair_kind: PairKind,
    pub dim: usize,
    pub seed: Seed,
    pub trials: u64,
    pub errors: u64,
    pub class_counts: BTreeMap<String, u64>,
    pub bounds: Vec<BoundSummary>,
    pub violating_trials: Vec<ViolatingTrial>,
}

impl EnsembleSummary {
    pub fn violations(&self) -> u64 {
        self.bounds.iter().map(|b| b.violations).sum()
    }
}

/// Seed of the ensemble for one (kind, dim) cell, so adding or removing
/// cells never changes the draws of the others.
pub fn ensemble_seed(master: Seed, kind: PairKind, dim: usize) -> Seed {
    let kind_index = PairKind::ALL.iter().position(|k| *k == kind).expect("kind is listed") as u64;
    sub_seed(sub_seed(master, kind_index), dim as u64)
}

pub fn summarize(kind: PairKind, dim: usize, seed: Seed, bounds: &[BoundId], trials: &[TrialRecord]) -> EnsembleSummary {
    let mut class_counts = BTreeMap::new();
    let mut errors = 0;
    let mut per_bound: Vec<BoundSummary> = bounds
        .iter()
        .map(|&bound_id| BoundSummary {
            bound_id,
            evaluated: 0,
            violations: 0,
            worst_slack: None,
            worst_trial: None,
            worst_seed: None,
        })
        .collect();
    let mut worst_margin = vec![f64::INFINITY; bounds.len()];
    let mut violating = Vec::new();

    for trial in trials {
        match trial.pair_class {
            Some(tag) => *class_counts.entry(tag.name().to_string()).or_insert(0) += 1,
            None => errors += 1,
        }
        for report in &trial.reports {
            let Some(slot) = bounds.iter().position(|b| *b == report.bound_id) else {
                continue;
            };
            let summary = &mut per_bound[slot];
            summary.evaluated += 1;
            if !report.satisfied {
                summary.violations += 1;
                if violating.len() < MAX_LISTED {
                    violating.push(ViolatingTrial {
                        trial: trial.index,
                        seed: trial.seed,
                        bound_id: report.bound_id,
                        lhs: report.lhs,
                        rhs: report.rhs,
                        slack: report.slack,
                    });
                }
            }
            // Strict comparison keeps the earliest trial on ties.
            if report.margin() < worst_margin[slot] || summary.worst_trial.is_none() {
                worst_margin[slot] = report.margin();
                summary.worst_slack = Some(report.slack);
                summary.worst_trial = Some(trial.index);
                summary.worst_seed = Some(trial.seed);
            }
        }
    }
    EnsembleSummary {
        pair_kind: kind,
        dim,
        seed,
        trials: trials.len() as u64,
        errors,
        class_counts,
        bounds: per_bound,
        violating_trials: violating,
    }
}

pub fn resolve(args: &VerifyArgs) -> Result<(VerifyConfig, Format, Option<std::path::PathBuf>)> {
    let cfg = load_config(args.config.as_ref(), KEYS)?;
    let (format, out) = output(&args.output, &cfg)?;
    let split = match &args.split {
        Some(text) => parse_split(text).map_err(CliError::Usage)?,
        None => cfg.get_with("split", parse_split)?.flatten(),
    };
    let permute = args.permute || cfg.get_with("permute", parse_bool)?.unwrap_or(false);
    let config = VerifyConfig {
        seed: resolve_seed(args.seed, cfg.get("seed")?)?,
        trials: match args.trials {
            Some(t) => t,
            None => cfg.get("trials")?.unwrap_or(DEFAULT_TRIALS),
        },
        dims: match &args.dim {
            Some(d) => d.clone(),
            None => cfg.get_list("dims")?.unwrap_or_else(|| DEFAULT_DIMS.to_vec()),
        },
        pair_kinds: match &args.pair_kind {
            Some(k) => k.clone(),
            None => cfg.get_list("pair_kinds")?.unwrap_or_else(|| PairKind::ALL.to_vec()),
        },
        bounds: match &args.bound {
            Some(b) => b.clone(),
            None => cfg.get_list("bounds")?.unwrap_or_else(|| BoundId::ALL.to_vec()),
        },
        tolerance: check_tolerance(match args.tolerance {
            Some(t) => t,
            None => cfg.get("tolerance")?.unwrap_or(tolerance::BOUND),
        })?,
        split,
        permute,
    };
    if config.dims.is_empty() || config.pair_kinds.is_empty() || config.bounds.is_empty() {
        return Err(CliError::usage("dims, pair kinds and bounds must not be empty"));
    }
    if args.workers == Some(0) {
        return Err(CliError::usage("--workers must be at least 1"));
    }
    Ok((config, format, out))
}

/// Runs every ensemble cell in a fixed order: pair kinds as given, then
/// dimensions as given.
pub fn run_cells(config: &VerifyConfig, workers: Option<usize>) -> Result<Vec<EnsembleSummary>> {
    let mut summaries = Vec::new();
    for &kind in &config.pair_kinds {
        for &dim in &config.dims {
            let seed = ensemble_seed(config.seed, kind, dim);
            let mut ensemble = EnsembleConfig::new(dim, config.trials, kind, seed);
            ensemble.split = config.split;
            ensemble.permute = config.permute;
            ensemble.tolerance = config.tolerance;
            let trials = match workers {
                Some(n) => run_ensemble_with_workers(&ensemble, n)?,
                None => run_ensemble(&ensemble)?,
            };
            let summary = summarize(kind, dim, seed, &config.bounds, &trials);
            log_summary(&summary);
            summaries.push(summary);
        }
    }
    Ok(summaries)
}

fn log_summary(s: &EnsembleSummary) {
    eprintln!(
        "{} d={}: {} trials, {} errors, {} violations",
        s.pair_kind,
        s.dim,
        s.trials,
        s.errors,
        s.violations()
    );
    for b in s.bounds.iter().filter(|b| b.evaluated > 0) {
        let label = match b.bound_id.kind() {
            BoundKind::Equality => "max residual",
            _ => "min slack",
        };
        eprintln!(
            "  {:<11} {:>6} evaluated, {} violated, {label} {:.3e}",
            b.bound_id.name(),
            b.evaluated,
            b.violations,
            b.worst_slack.unwrap_or(f64::NAN)
        );
    }
}

pub fn to_csv(summaries: &[EnsembleSummary]) -> String {
    let mut out = String::from("pair_kind,dim,bound_id,trials,errors,evaluated,violations,worst_slack,worst_trial,worst_seed\n");
    let opt = |v: Option<String>| v.unwrap_or_default();
    for s in summaries {
        for b in &s.bounds {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                s.pair_kind,
                s.dim,
                b.bound_id.name(),
                s.trials,
                s.errors,
                b.evaluated,
                b.violations,
                opt(b.worst_slack.map(|x| x.to_string())),
                opt(b.worst_trial.map(|x| x.to_string())),
                opt(b.worst_seed.map(|x| x.to_string())),
            ));
        }
    }
    out
}

pub fn run(args: &VerifyArgs) -> Result<Outcome> {
    let started = timestamp();
    let (config, format, out) = resolve(args)?;
    let summaries = run_cells(&config, args.workers)?;
    let violations = summaries.iter().map(EnsembleSummary::violations).sum();
    let payload = match format {
        Format::Csv => to_csv(&summaries),
        Format::Json => {
            let results: Value = to_value(&summaries);
            RunReport::new("verify", &config, started).finish(results, violations).to_json()
        }
    };
    if violations > 0 {
        eprintln!("verify: {violations} violations");
    }
    Ok(Outcome { payload, violations, out })
}
