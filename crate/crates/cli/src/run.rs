use std::path::Path;
use std::time::Instant;

use riemacon::diagnostics::{ball_oracle, OracleSolution};
use riemacon::objectives::Objective;
use riemacon::solvers::{
    alt_subroutine, boosted_riemacon, projected_rgd, regularized_solve, rgd, riemacon, riemacon_sc,
    RiemaconConfig, RunOptions, SolverTrace, Stopping, SubroutineBudget,
};
use riemacon::{Error, GeodesicBall, Point};
use serde::Serialize;

use crate::config::{ExperimentConfig, SolverKind};
use crate::output;

/// Everything a finished run reports.
#[derive(Debug)]
pub struct RunResult {
    pub trace: SolverTrace,
    pub point: Point,
    pub final_value: f64,
    pub oracle: Option<OracleSolution>,
    /// Certified gap bound from the solver, when it keeps one.
    pub certificate: Option<f64>,
    pub wall_seconds: f64,
}

impl RunResult {
    pub fn final_gap(&self) -> Option<(f64, &'static str)> {
        match (&self.oracle, self.certificate) {
            (Some(o), _) => Some(((self.final_value - o.value).max(0.0), "oracle")),
            (None, Some(c)) => Some((c, "certificate")),
            (None, None) => None,
        }
    }

    /// Gradient calls until the first row within `epsilon` of the oracle value.
    pub fn calls_to(&self, epsilon: f64) -> Option<u64> {
        let fstar = self.oracle.as_ref()?.value;
        self.trace.calls_to_reach(fstar + epsilon)
    }
}

/// A run that stopped on a non-finite iterate.
#[derive(Debug)]
pub struct Aborted {
    pub message: String,
    pub trace: SolverTrace,
}

#[derive(Debug)]
pub enum RunError {
    Invalid(String),
    Numerical(Aborted),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Numerical { message, trace } => RunError::Numerical(Aborted {
                message,
                trace: *trace,
            }),
            other => RunError::Invalid(other.to_string()),
        }
    }
}

/// Builds the instance, computes the oracle if asked, and runs the solver.
pub fn execute(
    cfg: &ExperimentConfig,
    kappa: Option<f64>,
    force_oracle: bool,
) -> Result<RunResult, RunError> {
    let m = &cfg.manifold;
    let inst = cfg.instance_spec(kappa).build(m)?;
    let f = &inst.objective;
    let ball = &inst.ball;
    let x0 = &inst.x0;

    let oracle = if cfg.oracle.enabled || force_oracle {
        // Unconstrained solvers are scored against the minimizer over the
        // whole certified domain.
        let region: &GeodesicBall = if cfg.solver.kind.unconstrained() {
            f.domain()
        } else {
            ball
        };
        Some(ball_oracle(
            f,
            region,
            &region.center,
            cfg.oracle.iterations,
        )?)
    } else {
        None
    };
    let opts = match &oracle {
        Some(o) => RunOptions::with_reference(o.point.clone()),
        None => RunOptions::default(),
    };
    let rc = RiemaconConfig {
        c_t: cfg.solver.c_t,
        budget: SubroutineBudget::with_c_inner(cfg.solver.c_inner),
    };
    let iterations = cfg.budget.iterations.unwrap_or(0);
    let epsilon = cfg.budget.epsilon.unwrap_or(0.0);
    // Two radii of the feasible ball bound the distance from x0 to x*.
    let r = cfg.solver.r.unwrap_or(2.0 * ball.radius);

    let start = Instant::now();
    let (point, trace, certificate) = match cfg.solver.kind {
        SolverKind::Rgd => {
            let out = rgd(f, x0, iterations, &opts)?;
            (out.point, out.trace, None)
        }
        SolverKind::ProjectedRgd => {
            let out = projected_rgd(f, ball, x0, iterations, &opts)?;
            (out.point, out.trace, None)
        }
        SolverKind::AltSubroutine => {
            let out = alt_subroutine(f, ball, x0, iterations, &opts)?;
            (out.point, out.trace, None)
        }
        SolverKind::Riemacon => {
            let stop = match cfg.budget.iterations {
                Some(t) => Stopping::Iterations(t),
                None => Stopping::Accuracy(epsilon),
            };
            let out = riemacon(f, ball, x0, stop, &rc, &opts)?;
            (out.point, out.trace, out.gap_bound)
        }
        SolverKind::RiemaconSc => {
            let out = riemacon_sc(f, ball, x0, epsilon, cfg.solver.r, &rc, &opts)?;
            (out.point, out.trace, Some(out.gap_bound))
        }
        SolverKind::Boosted => {
            let out = boosted_riemacon(f, x0, r, epsilon, &rc, &opts)?;
            (out.point, out.trace, None)
        }
        SolverKind::Regularized => {
            let out = regularized_solve(f, x0, r, epsilon, &rc, &opts)?;
            (out.point, out.trace, None)
        }
    };
    let wall_seconds = start.elapsed().as_secs_f64();
    Ok(RunResult {
        final_value: f.value(&point),
        trace,
        point,
        oracle,
        certificate,
        wall_seconds,
    })
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<&'a str>,
    config_hash: &'a str,
    seed: u64,
    manifold: String,
    solver: &'a str,
    final_gap: Option<f64>,
    gap_source: Option<&'a str>,
    final_value: Option<f64>,
    optimal_value: Option<f64>,
    oracle_converged: Option<bool>,
    total_grad_calls: u64,
    iterations: usize,
    final_point: Option<&'a [f64]>,
    trace: String,
    wall_time_seconds: f64,
}

pub enum Outcome {
    Ok,
    Violation(String),
    Invalid(String),
    Numerical(String),
}

/// `run` subcommand body; writes the trace and summary and returns the outcome.
pub fn cmd_run(config_path: &Path, root: &Path) -> Outcome {
    let cfg = match crate::config::load(config_path) {
        Ok(c) => c,
        Err(e) => return Outcome::Invalid(e.to_string()),
    };
    let (trace_path, summary_path) = cfg.output_paths(root, config_path);
    let result = execute(&cfg, None, false);
    let written = match &result {
        Ok(run) => {
            let gap = run.final_gap();
            let summary = Summary {
                status: "ok",
                message: None,
                config_hash: &cfg.hash,
                seed: cfg.seed,
                manifold: cfg.manifold.to_string(),
                solver: cfg.solver.kind.as_str(),
                final_gap: gap.map(|g| g.0),
                gap_source: gap.map(|g| g.1),
                final_value: Some(run.final_value),
                optimal_value: run.oracle.as_ref().map(|o| o.value),
                oracle_converged: run.oracle.as_ref().map(|o| o.converged),
                total_grad_calls: run.trace.total_grad_calls(),
                iterations: run.trace.len().saturating_sub(1),
                final_point: Some(run.point.as_slice()),
                trace: trace_path.display().to_string(),
                wall_time_seconds: run.wall_seconds,
            };
            write_outputs(&run.trace, &trace_path, &summary, &summary_path)
        }
        Err(RunError::Numerical(a)) => {
            let summary = Summary {
                status: "numerical_abort",
                message: Some(&a.message),
                config_hash: &cfg.hash,
                seed: cfg.seed,
                manifold: cfg.manifold.to_string(),
                solver: cfg.solver.kind.as_str(),
                final_gap: None,
                gap_source: None,
                final_value: a.trace.last().map(|r| r.f_value),
                optimal_value: None,
                oracle_converged: None,
                total_grad_calls: a.trace.total_grad_calls(),
                iterations: a.trace.len().saturating_sub(1),
                final_point: None,
                trace: trace_path.display().to_string(),
                wall_time_seconds: 0.0,
            };
            write_outputs(&a.trace, &trace_path, &summary, &summary_path)
        }
        Err(RunError::Invalid(msg)) => {
            return Outcome::Invalid(format!("{}: {msg}", config_path.display()))
        }
    };
    if let Err(e) = written {
        return Outcome::Invalid(e);
    }
    match result {
        Ok(_) => {
            println!(
                "wrote {} and {}",
                trace_path.display(),
                summary_path.display()
            );
            Outcome::Ok
        }
        Err(RunError::Numerical(a)) => Outcome::Numerical(format!(
            "{}: {}; partial trace in {}",
            config_path.display(),
            a.message,
            trace_path.display()
        )),
        Err(RunError::Invalid(_)) => unreachable!("returned above"),
    }
}

fn write_outputs(
    trace: &SolverTrace,
    trace_path: &Path,
    summary: &Summary,
    summary_path: &Path,
) -> Result<(), String> {
    output::write_atomic(trace_path, &trace.to_csv_bytes())?;
    let mut json = serde_json::to_vec_pretty(summary).map_err(|e| e.to_string())?;
    json.push(b'\n');
    output::write_atomic(summary_path, &json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use riemacon::solvers::TraceRecord;

    #[test]
    fn numerical_errors_keep_their_trace() {
        let mut trace = SolverTrace::default();
        trace.push(TraceRecord {
            k: 0,
            f_value: 1.0,
            grad_calls: 1,
            inner_iters: 0,
            dist_to_ref: None,
            psi: None,
        });
        let e = Error::Numerical {
            message: "gradient is not finite".into(),
            trace: Box::new(trace.clone()),
        };
        match RunError::from(e) {
            RunError::Numerical(a) => assert_eq!(a.trace.to_csv_bytes(), trace.to_csv_bytes()),
            RunError::Invalid(m) => panic!("misclassified: {m}"),
        }
        assert!(matches!(
            RunError::from(Error::BaseMismatch),
            RunError::Invalid(_)
        ));
    }

    #[test]
    fn abort_flushes_partial_trace_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let mut trace = SolverTrace::default();
        trace.push(TraceRecord {
            k: 0,
            f_value: 2.0,
            grad_calls: 3,
            inner_iters: 0,
            dist_to_ref: None,
            psi: None,
        });
        let summary = Summary {
            status: "numerical_abort",
            message: Some("x"),
            config_hash: "h",
            seed: 0,
            manifold: "euclidean:1".into(),
            solver: "rgd",
            final_gap: None,
            gap_source: None,
            final_value: Some(2.0),
            optimal_value: None,
            oracle_converged: None,
            total_grad_calls: 3,
            iterations: 0,
            final_point: None,
            trace: String::new(),
            wall_time_seconds: 0.0,
        };
        let t = dir.path().join("a/trace.csv");
        let s = dir.path().join("a/summary.json");
        write_outputs(&trace, &t, &summary, &s).unwrap();
        assert_eq!(std::fs::read(&t).unwrap(), trace.to_csv_bytes());
        let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&s).unwrap()).unwrap();
        assert_eq!(v["status"], "numerical_abort");
        assert_eq!(v["total_grad_calls"], 3);
    }
}
