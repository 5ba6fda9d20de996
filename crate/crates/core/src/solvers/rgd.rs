use super::numerical_abort;
use super::trace::{RunOptions, SolverOutput, SolverTrace, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::{zeta, GeodesicBall, Point};
use crate::objectives::{Counted, Objective};

fn record(f: &Counted, x: &Point, k: usize, opts: &RunOptions) -> TraceRecord {
    TraceRecord {
        k,
        f_value: f.value(x),
        grad_calls: f.calls(),
        inner_iters: 0,
        dist_to_ref: opts.reference.as_ref().map(|r| f.manifold().distance(x, r)),
        psi: None,
    }
}

/// Riemannian gradient descent with step `1/L`.
pub fn rgd(f: &dyn Objective, x0: &Point, steps: usize, opts: &RunOptions) -> Result<SolverOutput> {
    descend(f, x0, steps, None, 1.0 / f.smoothness(), opts)
}

/// Metric-projected gradient descent on a ball with step `(2 − ζ_D)/L`.
pub fn projected_rgd(
    f: &dyn Objective,
    ball: &GeodesicBall,
    x0: &Point,
    steps: usize,
    opts: &RunOptions,
) -> Result<SolverOutput> {
    let m = f.manifold();
    let z = zeta(ball.diameter(), m.curvature().kmin)?;
    if z >= 2.0 {
        return Err(Error::invalid(format!(
            "projected RGD needs zeta_D < 2, but the ball of diameter {} has zeta_D = {z:.6}",
            ball.diameter()
        )));
    }
    if !ball.contains(m, x0) {
        return Err(Error::invalid("projected RGD must start inside the ball"));
    }
    descend(f, x0, steps, Some(ball), (2.0 - z) / f.smoothness(), opts)
}

fn descend(
    f: &dyn Objective,
    x0: &Point,
    steps: usize,
    ball: Option<&GeodesicBall>,
    eta: f64,
    opts: &RunOptions,
) -> Result<SolverOutput> {
    let m = f.manifold();
    m.check_point(x0)?;
    let f = Counted::new(f);
    let mut trace = SolverTrace::default();
    let mut x = x0.clone();
    trace.push(record(&f, &x, 0, opts));
    for k in 1..=steps {
        let g = f.gradient(&x);
        if m.norm(&g) == 0.0 {
            trace.push(record(&f, &x, k, opts));
            continue;
        }
        if !eta.is_finite() {
            return Err(Error::invalid(
                "nonzero gradient with zero smoothness constant",
            ));
        }
        let next = m.exp(&x, &g.scale(-eta));
        x = match (next, ball) {
            (Ok(y), Some(b)) => b.project(m, &y)?,
            (Ok(y), None) => y,
            (Err(e), _) => return Err(numerical_abort(e.to_string(), trace)),
        };
        let r = record(&f, &x, k, opts);
        if !r.f_value.is_finite() {
            return Err(numerical_abort(
                format!("non-finite value at step {k}"),
                trace,
            ));
        }
        trace.push(r);
    }
    Ok(SolverOutput { point: x, trace })
}
