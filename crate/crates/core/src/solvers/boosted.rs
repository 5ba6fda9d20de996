use super::restart::{riemacon_sc, RestartOutput};
use super::riemacon::RiemaconConfig;
use super::trace::{RunOptions, SolverTrace, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::{zeta, GeodesicBall, Point};
use crate::objectives::{Objective, ProxObjective};

/// `(70 R |kmin|)⁻¹`, the closed-form ball diameter.
pub fn simple_ball_diameter(r: f64, kmin: f64) -> Result<f64> {
    check_radius(r)?;
    if kmin == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(1.0 / (70.0 * r * kmin.abs()))
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "distance bound must be positive and finite, got {r}"
        )))
    }
}

/// Largest `D ∈ (0, 2R]` with `D ζ_D 46 R |kmin| <= 1`, found by bisection.
/// Returns infinity on flat space.
pub fn compute_ball_diameter(r: f64, kmin: f64) -> Result<f64> {
    check_radius(r)?;
    if kmin == 0.0 {
        return Ok(f64::INFINITY);
    }
    let phi = |d: f64| zeta(d, kmin).map(|z| d * z * 46.0 * r * kmin.abs() - 1.0);
    if phi(2.0 * r)? <= 0.0 {
        return Ok(2.0 * r);
    }
    let (mut lo, mut hi) = (0.0, 2.0 * r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    if lo > 0.0 {
        Ok(lo)
    } else {
        simple_ball_diameter(r, kmin)
    }
}

/// Whether a single restarted run on `B(x0, R)` suffices.
pub fn boosted_shortcut(r: f64, kmin: f64) -> Result<bool> {
    check_radius(r)?;
    if kmin == 0.0 {
        return Ok(true);
    }
    Ok(2.0 * r <= 1.0 / (46.0 * r * kmin.abs() * zeta(2.0 * r, kmin)?))
}

/// `⌈(4R/D) ln(LR²/ε)⌉`, the number of ball subproblems.
pub fn ball_count(r: f64, d: f64, l: f64, epsilon: f64) -> usize {
    ((4.0 * r / d) * (l * r * r / epsilon).ln()).ceil().max(1.0) as usize
}

#[derive(Clone, Debug)]
pub struct BoostedOutput {
    pub point: Point,
    /// Row 0 is `x0`, then one row per ball subproblem.
    pub trace: SolverTrace,
    /// `x_0, x_1, ...`, the outer iterates.
    pub outer_points: Vec<Point>,
    /// Ball diameter; infinite when the single-ball shortcut was taken.
    pub diameter: f64,
    /// Number of balls the schedule allows.
    pub planned_balls: usize,
    pub shortcut: bool,
}

/// Ball-optimization boosting of the restarted scheme for μ-strongly
/// g-convex `f` with `R >= d(x0, x*)`.
pub fn boosted_riemacon(
    f: &dyn Objective,
    x0: &Point,
    r: f64,
    epsilon: f64,
    config: &RiemaconConfig,
    opts: &RunOptions,
) -> Result<BoostedOutput> {
    let m = f.manifold();
    m.check_point(x0)?;
    let mu = f.strong_convexity();
    if !(mu > 0.0) {
        return Err(Error::invalid(
            "boosted riemacon needs mu > 0; use regularized_solve",
        ));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid("target accuracy must be positive"));
    }
    let kmin = m.curvature().kmin;
    let dist_ref = |x: &Point| opts.reference.as_ref().map(|p| m.distance(x, p));
    let inner_opts = RunOptions {
        reference: opts.reference.clone(),
        capture_states: false,
    };
    let mut trace = SolverTrace::default();
    trace.push(TraceRecord {
        k: 0,
        f_value: f.value(x0),
        grad_calls: 0,
        inner_iters: 0,
        dist_to_ref: dist_ref(x0),
        psi: None,
    });

    if boosted_shortcut(r, kmin)? {
        let ball = GeodesicBall::new(x0.clone(), r)?;
        let RestartOutput {
            point,
            trace: inner,
            ..
        } = riemacon_sc(f, &ball, x0, epsilon, Some(r), config, &inner_opts)?;
        trace.push(TraceRecord {
            k: 1,
            f_value: f.value(&point),
            grad_calls: inner.total_grad_calls(),
            inner_iters: inner.len() as u64,
            dist_to_ref: dist_ref(&point),
            psi: None,
        });
        return Ok(BoostedOutput {
            outer_points: vec![x0.clone(), point.clone()],
            point,
            trace,
            diameter: f64::INFINITY,
            planned_balls: 1,
            shortcut: true,
        });
    }

    let d = compute_ball_diameter(r, kmin)?;
    let l = f.smoothness();
    let balls = ball_count(r, d, l, epsilon);
    let eps_ball = (d * epsilon / (8.0 * r)).min(mu * r * r / (2.0 * (balls as f64).powi(2)));

    let mut calls = 0u64;
    let mut x = x0.clone();
    let mut outer_points = vec![x.clone()];
    for k in 1..=balls {
        let ball = GeodesicBall::new(x.clone(), d / 2.0)?;
        let out = riemacon_sc(f, &ball, &x, eps_ball, Some(d / 2.0), config, &inner_opts).map_err(
            |e| match e {
                Error::Numerical { message, .. } => super::numerical_abort(message, trace.clone()),
                other => other,
            },
        )?;
        calls += out.trace.total_grad_calls();
        x = out.point;
        outer_points.push(x.clone());
        // Global certificate from strong convexity; costs one gradient.
        let g = f.gradient(&x);
        calls += 1;
        trace.push(TraceRecord {
            k,
            f_value: f.value(&x),
            grad_calls: calls,
            inner_iters: out.trace.len() as u64,
            dist_to_ref: dist_ref(&x),
            psi: None,
        });
        if m.norm(&g).powi(2) / (2.0 * mu) <= epsilon {
            break;
        }
    }
    Ok(BoostedOutput {
        point: x,
        trace,
        outer_points,
        diameter: d,
        planned_balls: balls,
        shortcut: false,
    })
}

/// Minimizes a g-convex `f` with `R >= d(x0, x*)` by adding
/// `(ε/2R²) d(x0, ·)²` and solving the result to `ε/2`.
pub fn regularized_solve(
    f: &dyn Objective,
    x0: &Point,
    r: f64,
    epsilon: f64,
    config: &RiemaconConfig,
    opts: &RunOptions,
) -> Result<BoostedOutput> {
    check_radius(r)?;
    if !(epsilon > 0.0) {
        return Err(Error::invalid("target accuracy must be positive"));
    }
    let z = zeta(3.0 * r, f.manifold().curvature().kmin)?;
    let h = ProxObjective::new(f, x0.clone(), r * r / epsilon, z)?;
    let mut out = boosted_riemacon(&h, x0, r, epsilon / 2.0, config, opts)?;
    for row in &mut out.trace.records {
        row.f_value = f.value(&out.outer_points[row.k.min(out.outer_points.len() - 1)]);
    }
    Ok(out)
}
