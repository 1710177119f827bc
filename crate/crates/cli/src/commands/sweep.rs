//! One bound along a grid of |alpha|^2 for a single seeded pair.

use coherence_lab_core::ensembles::sample_inputs;
use coherence_lab_core::search::{default_pair_kind, is_compatible};
use coherence_lab_core::{
    classify_pair, evaluate, tolerance, BoundId, EnsembleConfig, PairKind, PairTag, Seed, StateVector,
    SuperpositionCoefficients,
};
use serde::Serialize;

use super::{load_config, output};
use crate::config::parse_split;
use crate::error::{CliError, Result};
use crate::report::{timestamp, to_value, RunReport};
use crate::{check_tolerance, resolve_seed, Format, Outcome, SweepArgs};

pub const DEFAULT_GRID: &str = "0.1:0.9:0.1";
pub const DEFAULT_DIM: usize = 2;

const KEYS: &[&str] = &["bound", "dim", "grid", "seed", "pair_kind", "pair", "split", "tolerance", "out", "format"];

/// Where the fixed pair comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSource {
    Random,
    /// `|0>` and `|d-1>`.
    Basis,
}

fn parse_pair_source(text: &str) -> std::result::Result<PairSource, String> {
    match text.trim().to_ascii_lowercase().as_str() {
        "random" => Ok(PairSource::Random),
        "basis" => Ok(PairSource::Basis),
        other => Err(format!("unknown pair `{other}` (expected random or basis)")),
    }
}

fn snap(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Parses `start:stop:step` (inclusive of `stop` up to rounding) or a
/// comma-separated list. Every point must lie strictly inside (0, 1).
pub fn parse_grid(text: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let points: Vec<f64> = match parts.as_slice() {
        [start, stop, step] => {
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0 && step.is_finite() && stop.is_finite() && start <= stop) {
                return Err(format!("grid `{text}` needs step > 0 and stop >= start"));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            if n > 1_000_000 {
                return Err(format!("grid `{text}` has too many points"));
            }
            (0..=n).map(|k| snap(start + k as f64 * step)).collect()
        }
        [_] => crate::config::parse_list::<f64>(text)?,
        _ => return Err(format!("grid `{text}` is neither start:stop:step nor a list")),
    };
    if let Some(bad) = points.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
        return Err(format!("grid point {bad} is outside (0, 1)"));
    }
    if points.is_empty() {
        return Err("grid is empty".into());
    }
    Ok(points)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub bound: BoundId,
    pub dim: usize,
    pub grid: Vec<f64>,
    pub seed: Seed,
    pub pair_kind: PairKind,
    pub pair: PairSource,
    pub split: Option<(usize, usize)>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub alpha_sq: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub phi: StateVector,
    pub psi: StateVector,
    pub pair_class: PairTag,
    pub points: Vec<SweepPoint>,
}

pub fn resolve(args: &SweepArgs) -> Result<(SweepConfig, Format, Option<std::path::PathBuf>)> {
    let cfg = load_config(args.config.as_ref(), KEYS)?;
    let (format, out) = output(&args.output, &cfg)?;
    let bound = match args.bound {
        Some(b) => b,
        None => cfg
            .get::<BoundId>("bound")?
            .ok_or_else(|| CliError::usage("sweep needs --bound"))?,
    };
    let pair_kind = match args.pair_kind {
        Some(k) => k,
        None => cfg.get("pair_kind")?.unwrap_or_else(|| default_pair_kind(bound)),
    };
    if !is_compatible(bound, pair_kind) {
        return Err(CliError::usage(format!("{bound} cannot be evaluated on {pair_kind} pairs")));
    }
    let grid = match &args.grid {
        Some(text) => parse_grid(text).map_err(CliError::Usage)?,
        None => cfg.get_with("grid", parse_grid)?.unwrap_or_else(|| parse_grid(DEFAULT_GRID).expect("default grid")),
    };
    let split = match &args.split {
        Some(text) => parse_split(text).map_err(CliError::Usage)?,
        None => cfg.get_with("split", parse_split)?.flatten(),
    };
    let dim = match args.dim {
        Some(d) => d,
        None => cfg.get("dim")?.unwrap_or(DEFAULT_DIM),
    };
    let pair = match &args.pair {
        Some(text) => parse_pair_source(text).map_err(CliError::Usage)?,
        None => cfg.get_with("pair", parse_pair_source)?.unwrap_or(PairSource::Random),
    };
    let config = SweepConfig {
        bound,
        pair,
        dim,
        grid,
        seed: resolve_seed(args.seed, cfg.get("seed")?)?,
        pair_kind,
        // A fixed pair needs a fixed split; halves unless told otherwise.
        split: Some(split.unwrap_or((dim / 2, dim - dim / 2))),
        tolerance: check_tolerance(match args.tolerance {
            Some(t) => t,
            None => cfg.get("tolerance")?.unwrap_or(tolerance::BOUND),
        })?,
    };
    Ok((config, format, out))
}

pub fn sweep(config: &SweepConfig) -> Result<SweepResult> {
    let mut ensemble = EnsembleConfig::new(config.dim, 1, config.pair_kind, config.seed);
    ensemble.split = config.split;
    ensemble.tolerance = config.tolerance;
    ensemble.validate()?;
    let (phi, psi) = match config.pair {
        PairSource::Random => {
            let (_, phi, psi) = sample_inputs(&mut config.seed.rng(), &ensemble)?;
            (phi, psi)
        }
        PairSource::Basis => (StateVector::basis(config.dim, 0)?, StateVector::basis(config.dim, config.dim - 1)?),
    };
    let pair_class = classify_pair(&phi, &psi)?.tag;
    let points = config
        .grid
        .iter()
        .map(|&a| {
            let c = SuperpositionCoefficients::real(a)?;
            let r = evaluate(config.bound, &c, &phi, &psi, config.tolerance)?;
            Ok(SweepPoint { alpha_sq: a, lhs: r.lhs, rhs: r.rhs, slack: r.slack, satisfied: r.satisfied })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { phi, psi, pair_class, points })
}

pub fn to_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("alpha_sq,lhs,rhs,slack\n");
    for p in points {
        out.push_str(&format!("{},{},{},{}\n", p.alpha_sq, p.lhs, p.rhs, p.slack));
    }
    out
}

pub fn run(args: &SweepArgs) -> Result<Outcome> {
    let started = timestamp();
    let (config, format, out) = resolve(args)?;
    let result = sweep(&config)?;
    for p in &result.points {
        eprintln!(
            "|alpha|^2 = {:.6}  lhs = {:.6}  rhs = {:.6}  slack = {:.3e}{}",
            p.alpha_sq,
            p.lhs,
            p.rhs,
            p.slack,
            if p.satisfied { "" } else { "  VIOLATED" }
        );
    }
    let violations = result.points.iter().filter(|p| !p.satisfied).count() as u64;
    let payload = match format {
        Format::Csv => to_csv(&result.points),
        Format::Json => RunReport::new("sweep", &config, started).finish(to_value(&result), violations).to_json(),
    };
    Ok(Outcome { payload, violations, out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_grid_includes_endpoint() {
        let g = parse_grid("0.1:0.9:0.1").unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[8], 0.9);
        assert_eq!(g[2], 0.3);
    }

    #[test]
    fn list_grid() {
        assert_eq!(parse_grid("0.25, 0.5").unwrap(), vec![0.25, 0.5]);
    }

    #[test]
    fn grid_rejects_closed_endpoints() {
        assert!(parse_grid("0:1:0.5").is_err());
        assert!(parse_grid("1.0").is_err());
        assert!(parse_grid("0.1:0.2:0").is_err());
        assert!(parse_grid("0.1:0.2").is_err());
    }

    #[test]
    fn basis_pair_saturates_the_equality_at_one_half() {
        let args = SweepArgs {
            bound: Some(BoundId::T1Equality),
            pair: Some("basis".into()),
            ..Default::default()
        };
        let (config, _, _) = resolve(&args).unwrap();
        let result = sweep(&config).unwrap();
        assert_eq!(result.points.len(), 9);
        assert!(result.points.iter().all(|p| p.slack <= 1e-12));
        let mid = &result.points[4];
        assert_eq!(mid.alpha_sq, 0.5);
        assert!((mid.lhs - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn incompatible_pair_kind_is_a_usage_error() {
        let args = SweepArgs {
            bound: Some(BoundId::T1Equality),
            pair_kind: Some(PairKind::NonOrthogonal),
            ..Default::default()
        };
        assert!(matches!(resolve(&args), Err(CliError::Usage(_))));
    }
}
