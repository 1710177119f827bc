//! Adversarial search for the inputs that bring one bound closest to
//! failing.

use coherence_lab_core::search::{default_pair_kind, DEFAULT_ITERATIONS, DEFAULT_RESTARTS};
use coherence_lab_core::{minimize_slack, tolerance, BoundId, BoundKind, ComplexScalar, SearchResult, SearchSpec};

use super::{load_config, output};
use crate::config::parse_split;
use crate::error::{CliError, Result};
use crate::report::{timestamp, to_value, RunReport};
use crate::{check_tolerance, resolve_seed, Format, Outcome, SaturateArgs};

pub const DEFAULT_DIM: usize = 2;

const KEYS: &[&str] = &[
    "bound", "dim", "restarts", "iterations", "seed", "pair_kind", "split", "tolerance", "out", "format",
];

pub fn resolve(args: &SaturateArgs) -> Result<(SearchSpec, Format, Option<std::path::PathBuf>)> {
    let cfg = load_config(args.config.as_ref(), KEYS)?;
    let (format, out) = output(&args.output, &cfg)?;
    let bound = match args.bound {
        Some(b) => b,
        None => cfg
            .get::<BoundId>("bound")?
            .ok_or_else(|| CliError::usage("saturate needs --bound"))?,
    };
    let dim = match args.dim {
        Some(d) => d,
        None => cfg.get("dim")?.unwrap_or(DEFAULT_DIM),
    };
    let mut spec = SearchSpec::new(bound, dim, resolve_seed(args.seed, cfg.get("seed")?)?);
    spec.pair_kind = match args.pair_kind {
        Some(k) => k,
        None => cfg.get("pair_kind")?.unwrap_or_else(|| default_pair_kind(bound)),
    };
    spec.restarts = match args.restarts {
        Some(r) => r,
        None => cfg.get("restarts")?.unwrap_or(DEFAULT_RESTARTS),
    };
    spec.iterations = match args.iterations {
        Some(i) => i,
        None => cfg.get("iterations")?.unwrap_or(DEFAULT_ITERATIONS),
    };
    spec.split = match &args.split {
        Some(text) => parse_split(text).map_err(CliError::Usage)?,
        None => cfg.get_with("split", parse_split)?.flatten(),
    };
    spec.tolerance = check_tolerance(match args.tolerance {
        Some(t) => t,
        None => cfg.get("tolerance")?.unwrap_or(tolerance::BOUND),
    })?;
    spec.validate().map_err(|e| CliError::usage(e.to_string()))?;
    Ok((spec, format, out))
}

fn amp(z: ComplexScalar) -> String {
    format!("{:+.11e}{:+.11e}i", z.re, z.im)
}

fn log_result(result: &SearchResult) {
    let r = &result.best_report;
    let what = match r.bound_id.kind() {
        BoundKind::Equality => "max residual",
        _ => "min slack",
    };
    eprintln!(
        "{}: {what} {:.12e} (lhs {:.12e}, rhs {:.12e}) from restart {}",
        result.bound_id.name(),
        result.best_slack,
        r.lhs,
        r.rhs,
        result.best_restart
    );
    let inputs = &result.best_inputs;
    eprintln!("  alpha = {}", amp(inputs.coefficients.alpha()));
    eprintln!("  beta  = {}", amp(inputs.coefficients.beta()));
    for (name, state) in [("phi", &inputs.phi), ("psi", &inputs.psi)] {
        let amps: Vec<String> = state.amps().iter().map(|&z| amp(z)).collect();
        eprintln!("  {name}   = [{}]", amps.join(", "));
    }
    if result.is_violation() {
        eprintln!("  VIOLATED beyond tolerance {:e}", r.tolerance);
    }
}

pub fn to_csv(result: &SearchResult) -> String {
    let mut out = String::from("restart,seed,best_margin,iterations\n");
    for t in &result.trace {
        out.push_str(&format!("{},{},{},{}\n", t.restart, t.seed, t.best_margin, t.iterations));
    }
    out
}

pub fn run(args: &SaturateArgs) -> Result<Outcome> {
    let started = timestamp();
    let (spec, format, out) = resolve(args)?;
    let result = minimize_slack(&spec)?;
    log_result(&result);
    let violations = u64::from(result.is_violation());
    let payload = match format {
        Format::Csv => to_csv(&result),
        Format::Json => RunReport::new("saturate", &spec, started).finish(to_value(&result), violations).to_json(),
    };
    Ok(Outcome { payload, violations, out })
}
