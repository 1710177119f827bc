//! The two introductory qubit examples: basis states superposing into a
//! maximally coherent state, and maximally coherent states superposing into
//! an incoherent one.

use coherence_lab_core::{evaluate_all, pure_state_coherence, superpose, BoundReport, StateVector, SuperpositionCoefficients};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::report::{timestamp, to_value, RunReport};
use crate::{check_tolerance, DemoArgs, Format, Outcome};

#[derive(Debug, Clone, Serialize)]
pub struct DemoExample {
    pub name: &'static str,
    pub phi_label: &'static str,
    pub psi_label: &'static str,
    pub coefficients: SuperpositionCoefficients,
    pub superposition: StateVector,
    pub coherence_phi: f64,
    pub coherence_psi: f64,
    pub coherence_superposition: f64,
    pub reports: Vec<BoundReport>,
}

fn example(
    name: &'static str,
    (phi_label, phi): (&'static str, StateVector),
    (psi_label, psi): (&'static str, StateVector),
    tolerance: f64,
) -> Result<DemoExample> {
    let coefficients = SuperpositionCoefficients::real(0.5)?;
    let omega = superpose(&coefficients, &phi, &psi)?
        .normalized
        .expect("intro superpositions have unit norm");
    Ok(DemoExample {
        name,
        phi_label,
        psi_label,
        coefficients,
        coherence_phi: pure_state_coherence(&phi).value(),
        coherence_psi: pure_state_coherence(&psi).value(),
        coherence_superposition: pure_state_coherence(&omega).value(),
        reports: evaluate_all(&coefficients, &phi, &psi, tolerance)?,
        superposition: omega,
    })
}

/// Evaluates both examples end to end.
pub fn demo_examples(tolerance: f64) -> Result<Vec<DemoExample>> {
    let zero = StateVector::basis(2, 0)?;
    let one = StateVector::basis(2, 1)?;
    let plus = StateVector::from_real(&[1.0, 1.0])?;
    let minus = StateVector::from_real(&[1.0, -1.0])?;
    Ok(vec![
        example("basis_superposition", ("|0>", zero), ("|1>", one), tolerance)?,
        example("plus_minus_superposition", ("|+>", plus), ("|->", minus), tolerance)?,
    ])
}

#[derive(Debug, Clone, Serialize)]
struct DemoConfig {
    tolerance: f64,
}

pub fn run(args: &DemoArgs) -> Result<Outcome> {
    if args.output.format == Some(Format::Csv) {
        return Err(CliError::usage("demo only writes JSON"));
    }
    let tolerance = check_tolerance(args.tolerance.unwrap_or(coherence_lab_core::tolerance::BOUND))?;
    let started = timestamp();
    let examples = demo_examples(tolerance)?;
    for ex in &examples {
        eprintln!(
            "{}: ({} + {})/sqrt(2): C(phi) = {:.6}, C(psi) = {:.6}, omega coherence = {:.6}",
            ex.name,
            ex.phi_label,
            ex.psi_label,
            ex.coherence_phi,
            ex.coherence_psi,
            ex.coherence_superposition,
        );
        for r in &ex.reports {
            eprintln!(
                "  {:<11} lhs = {:>10.6} rhs = {:>10.6} slack = {:>10.3e} {}",
                r.bound_id.name(),
                r.lhs,
                r.rhs,
                r.slack,
                if r.satisfied { "ok" } else { "VIOLATED" }
            );
        }
    }
    let violations = examples.iter().flat_map(|e| &e.reports).filter(|r| !r.satisfied).count() as u64;
    let results = json!({ "examples": to_value(&examples) });
    let report = RunReport::new("demo", DemoConfig { tolerance }, started).finish(results, violations);
    Ok(Outcome { payload: report.to_json(), violations, out: args.output.out.clone() })
}
