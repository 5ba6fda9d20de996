use std::f64::consts::PI;

use super::prox::warm_start;
use super::trace::{RunOptions, SolverOutput, SolverTrace, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::{GeodesicBall, Manifold, Point, Tangent};
use crate::objectives::{Counted, Objective};

const GRID: usize = 720;

/// Distance from `x` along a unit direction making angle `φ` (given as
/// `cos φ`) with the geodesic to the center, until the ball boundary.
fn exit_distance(m: &Manifold, d0: f64, cos_phi: f64, r: f64) -> f64 {
    match *m {
        Manifold::Hyperbolic { c, .. } => {
            let sc = c.sqrt();
            let a = (sc * d0).cosh();
            let b = (sc * d0).sinh() * cos_phi;
            let cc = (sc * r).cosh();
            let disc = (cc * cc - (a * a - b * b)).max(0.0);
            ((cc + disc.sqrt()) / (a - b)).ln().max(0.0) / sc
        }
        _ => {
            let disc = (d0 * d0 * cos_phi * cos_phi - d0 * d0 + r * r).max(0.0);
            (d0 * cos_phi + disc.sqrt()).max(0.0)
        }
    }
}

/// Minimizer over `y ∈ X` of `⟨∇f(x), log_x y⟩ + (L/2) d(x, y)²`.
pub fn alt_linearized_step(f: &dyn Objective, ball: &GeodesicBall, x: &Point) -> Result<Point> {
    let g = f.gradient(x);
    linearized_step_with(f, ball, x, &g)
}

fn linearized_step_with(
    f: &dyn Objective,
    ball: &GeodesicBall,
    x: &Point,
    g: &Tangent,
) -> Result<Point> {
    let m = f.manifold();
    if matches!(m, Manifold::Spd { .. }) {
        return Err(Error::Unavailable("linearized step on spd".into()));
    }
    if !ball.contains(m, x) {
        return Err(Error::invalid("linearized step must start inside the ball"));
    }
    let l = f.smoothness();
    let gn = m.norm(g);
    if gn == 0.0 {
        return Ok(x.clone());
    }
    let target = g.scale(-1.0 / l);
    let candidate = m.exp(x, &target)?;
    if m.distance(&ball.center, &candidate) <= ball.radius {
        return Ok(candidate);
    }
    let tau = gn / l;
    let e1 = g.scale(-1.0 / gn);
    let u = m.log(x, &ball.center);
    let d0 = m.norm(&u);
    let (e2, c1, c2) = if d0 > 0.0 {
        let uh = u.scale(1.0 / d0);
        let c1 = m.inner(x, &uh, &e1)?;
        let perp = uh.axpy(-c1, &e1)?;
        let pn = m.norm(&perp);
        if pn > 1e-12 {
            (perp.scale(1.0 / pn), c1, pn)
        } else {
            (any_orthogonal(m, x, &e1)?, c1, 0.0)
        }
    } else {
        (any_orthogonal(m, x, &e1)?, 0.0, 0.0)
    };
    // With w(θ) = cos θ e1 + sin θ e2, the step is s(θ) w(θ) and the
    // objective is ‖s w − τ e1‖².
    let q = |theta: f64| {
        let cos_phi = (theta.cos() * c1 + theta.sin() * c2).clamp(-1.0, 1.0);
        let s = exit_distance(m, d0, cos_phi, ball.radius);
        s * s - 2.0 * s * tau * theta.cos() + tau * tau
    };
    let step = 2.0 * PI / GRID as f64;
    let mut best = (0.0, f64::INFINITY);
    for i in 0..GRID {
        let theta = -PI + i as f64 * step;
        let v = q(theta);
        if v < best.1 {
            best = (theta, v);
        }
    }
    let theta = golden_section(&q, best.0 - step, best.0 + step);
    let cos_phi = (theta.cos() * c1 + theta.sin() * c2).clamp(-1.0, 1.0);
    let s = exit_distance(m, d0, cos_phi, ball.radius);
    let w = e1.scale(theta.cos()).axpy(theta.sin(), &e2)?;
    let y = m.exp(x, &w.scale(s))?;
    ball.project(m, &y)
}

fn any_orthogonal(m: &Manifold, x: &Point, e1: &Tangent) -> Result<Tangent> {
    if m.dim() < 2 {
        return Ok(m.zero(x));
    }
    for i in 0..m.coord_len() {
        let mut raw = nalgebra::DVector::zeros(m.coord_len());
        raw[i] = 1.0;
        let t = m.tangent(x, raw);
        let t = t.axpy(-m.inner(x, &t, e1)?, e1)?;
        let n = m.norm(&t);
        if n > 1e-6 {
            return Ok(t.scale(1.0 / n));
        }
    }
    Err(Error::Numerical {
        message: "no orthogonal direction found".into(),
        trace: Box::default(),
    })
}

fn golden_section(q: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (q(x1), q(x2));
    for _ in 0..200 {
        if b - a <= 1e-13 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = q(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = q(x2);
        }
    }
    0.5 * (a + b)
}

/// Warm start followed by `steps` linearized steps.
pub fn alt_subroutine(
    f: &dyn Objective,
    ball: &GeodesicBall,
    x0: &Point,
    steps: usize,
    opts: &RunOptions,
) -> Result<SolverOutput> {
    let m = f.manifold();
    if matches!(m, Manifold::Spd { .. }) {
        return Err(Error::Unavailable("linearized step on spd".into()));
    }
    let fc = Counted::new(f);
    let mut trace = SolverTrace::default();
    let record = |k: usize, x: &Point, calls: u64| TraceRecord {
        k,
        f_value: f.value(x),
        grad_calls: calls,
        inner_iters: 0,
        dist_to_ref: opts.reference.as_ref().map(|p| m.distance(x, p)),
        psi: None,
    };
    let mut x = warm_start(&fc, ball, x0)?.p0;
    trace.push(record(0, &x, fc.calls()));
    for k in 1..=steps {
        let g = fc.gradient(&x);
        x = linearized_step_with(f, ball, &x, &g).map_err(|e| match e {
            Error::Numerical { message, .. } | Error::NonFinite(message) => {
                super::numerical_abort(message, trace.clone())
            }
            other => other,
        })?;
        trace.push(record(k, &x, fc.calls()));
    }
    Ok(SolverOutput { point: x, trace })
}
