use riemacon::diagnostics::{lemma_battery, schedule_check, LemmaId, LemmaReport};
use riemacon::geometry::zeta;
use riemacon::solvers::RiemaconParams;
use riemacon::Manifold;

use crate::run::Outcome;

/// Diameter of the working sets the battery samples from.
const WORKING_DIAMETER: f64 = 2.0;
const SCHEDULE_STEPS: usize = 100_000;

pub struct CheckRow {
    pub report: LemmaReport,
    /// Reported but not gating; the tight cosine law is a sharper variant.
    pub informational: bool,
}

pub fn run_checks(m: &Manifold, trials: usize, seed: u64) -> riemacon::Result<Vec<CheckRow>> {
    let mut rows: Vec<CheckRow> = LemmaId::ALL
        .into_iter()
        .map(|id| CheckRow {
            report: lemma_battery(m, id, trials, seed),
            informational: id == LemmaId::CosineTight,
        })
        .collect();
    let z = zeta(2.0 * WORKING_DIAMETER, m.curvature().kmin)?;
    let p = RiemaconParams::new(z, 1.0)?;
    rows.push(CheckRow {
        report: schedule_check(p.lambda, p.xi, SCHEDULE_STEPS),
        informational: false,
    });
    Ok(rows)
}

pub fn cmd_check(manifold: &str, trials: usize, seed: u64) -> Outcome {
    let m: Manifold = match manifold.parse() {
        Ok(m) => m,
        Err(e) => return Outcome::Invalid(e.to_string()),
    };
    if trials == 0 {
        return Outcome::Invalid("--trials must be at least 1".into());
    }
    let rows = match run_checks(&m, trials, seed) {
        Ok(r) => r,
        Err(e) => return Outcome::Invalid(e.to_string()),
    };
    println!(
        "{:<20} {:>8} {:>12} {:>10}  status",
        "check", "trials", "worst_slack", "tolerance"
    );
    let mut violated = Vec::new();
    for row in &rows {
        let r = &row.report;
        let status = match (r.passed(), row.informational) {
            (true, _) => "pass",
            (false, true) => "info",
            (false, false) => {
                violated.push(r.lemma.clone());
                "FAIL"
            }
        };
        println!(
            "{:<20} {:>8} {:>12.3e} {:>10.1e}  {status}",
            r.lemma, r.trials, r.worst_slack, r.tolerance
        );
    }
    if violated.is_empty() {
        println!("{m}: all checks passed");
        Outcome::Ok
    } else {
        Outcome::Violation(format!("{m}: violated {}", violated.join(", ")))
    }
}
