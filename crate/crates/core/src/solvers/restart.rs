use super::riemacon::{riemacon_inner, GapCertificate, RiemaconConfig, Stopping};
use super::trace::{RunOptions, SolverTrace, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::{zeta, GeodesicBall, Point};
use crate::objectives::Objective;

#[derive(Clone, Debug)]
pub struct RestartOutput {
    pub point: Point,
    pub trace: SolverTrace,
    /// Starting point of every stage, followed by the final point.
    pub stage_points: Vec<Point>,
    /// Certified gap bound at `point`.
    pub gap_bound: f64,
}

/// Appends `stage` to `into`, shifting gradient counters by `offset` and
/// renumbering rows.
pub(crate) fn append_trace(into: &mut SolverTrace, stage: &SolverTrace, offset: u64) {
    for r in &stage.records {
        let k = into.len();
        into.push(TraceRecord {
            k,
            grad_calls: r.grad_calls + offset,
            psi: None,
            ..r.clone()
        });
    }
}

/// Restarted riemacon for μ-strongly g-convex `f`: each stage drives the gap
/// to `μR²/8`, which halves the distance bound `R`.
pub fn riemacon_sc(
    f: &dyn Objective,
    ball: &GeodesicBall,
    x0: &Point,
    epsilon: f64,
    r0: Option<f64>,
    config: &RiemaconConfig,
    opts: &RunOptions,
) -> Result<RestartOutput> {
    let m = f.manifold();
    let mu = f.strong_convexity();
    if !(mu > 0.0) {
        return Err(Error::invalid(
            "riemacon_sc needs mu > 0; use regularized_solve",
        ));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid("target accuracy must be positive"));
    }
    let mut r = r0.unwrap_or(ball.diameter());
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid(format!(
            "initial distance bound must be positive, got {r}"
        )));
    }
    let l = f.smoothness();
    let z = zeta(ball.diameter(), m.curvature().kmin)?;
    let cap = (config.c_t * z * (8.0 * l / mu).sqrt()).ceil().max(1.0) as usize;
    let stages = (mu * r * r / epsilon).log2().ceil().max(1.0) as usize;

    let mut calls = 1;
    let mut trace = SolverTrace::default();
    let mut cert = GapCertificate::new();
    let mut x = x0.clone();
    let g = f.gradient(&x);
    let mut gap = cert.update(f, ball, &x, &g);
    trace.push(TraceRecord {
        k: 0,
        f_value: f.value(&x),
        grad_calls: calls,
        inner_iters: 0,
        dist_to_ref: opts.reference.as_ref().map(|p| m.distance(&x, p)),
        psi: None,
    });
    let mut stage_points = vec![x.clone()];
    if gap <= epsilon {
        return Ok(RestartOutput {
            point: x,
            trace,
            stage_points,
            gap_bound: gap,
        });
    }
    let stage_opts = RunOptions {
        reference: opts.reference.clone(),
        capture_states: false,
    };
    for _ in 0..stages {
        let target = (mu * r * r / 8.0).max(epsilon);
        let out = riemacon_inner(
            f,
            ball,
            &x,
            Stopping::Accuracy(target),
            Some(cap),
            config,
            &stage_opts,
        )
        .map_err(|e| match e {
            Error::Numerical {
                message,
                trace: partial,
            } => {
                let mut merged = trace.clone();
                append_trace(&mut merged, &partial, calls);
                super::numerical_abort(message, merged)
            }
            other => other,
        })?;
        append_trace(&mut trace, &out.trace, calls);
        calls += out.trace.total_grad_calls();
        x = out.point;
        stage_points.push(x.clone());
        gap = out.gap_bound.unwrap_or(f64::INFINITY);
        if gap <= epsilon {
            break;
        }
        r *= 0.5;
    }
    Ok(RestartOutput {
        point: x,
        trace,
        stage_points,
        gap_bound: gap,
    })
}
