use crate::error::{Error, Result};
use crate::geometry::{tangent_ball_project, zeta, GeodesicBall, Point, Tangent};
use crate::objectives::{pullback, Objective, ProxObjective, PullbackObjective};

/// Inner iteration cap for each proximal subproblem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubroutineBudget {
    pub c_inner: f64,
    /// Overrides the formula with a fixed count.
    pub fixed: Option<usize>,
}

impl Default for SubroutineBudget {
    fn default() -> Self {
        SubroutineBudget {
            c_inner: 1.0,
            fixed: None,
        }
    }
}

impl SubroutineBudget {
    pub fn with_c_inner(c_inner: f64) -> Self {
        SubroutineBudget {
            c_inner,
            fixed: None,
        }
    }

    pub fn fixed(iters: usize) -> Self {
        SubroutineBudget {
            c_inner: 0.0,
            fixed: Some(iters),
        }
    }

    /// `ceil(c_inner √ζ (ln(78 λL'/(2Δ)) + ln ζ + 1))`, at least 1.
    pub fn iterations(&self, zeta_2d: f64, lambda_lprime: f64, delta: f64) -> usize {
        if let Some(n) = self.fixed {
            return n.max(1);
        }
        let logs = (78.0 * lambda_lprime / (2.0 * delta)).ln() + zeta_2d.ln() + 1.0;
        let n = (self.c_inner * zeta_2d.sqrt() * logs).ceil();
        if n.is_finite() && n >= 1.0 {
            n as usize
        } else {
            1
        }
    }
}

/// Result of the warm start for a prox subproblem.
#[derive(Clone, Debug)]
pub struct WarmStart {
    pub p0: Point,
    pub d_prime: f64,
    pub gap_bound: f64,
}

/// Projected gradient step from the projection of `x`, with a computable
/// bound on the initial gap.
pub fn warm_start(h: &dyn Objective, ball: &GeodesicBall, x: &Point) -> Result<WarmStart> {
    let m = h.manifold();
    let xp = ball.project(m, x)?;
    let g = h.gradient(&xp);
    let lp = h.smoothness();
    let gn = m.norm(&g);
    if gn == 0.0 {
        return Ok(WarmStart {
            p0: xp,
            d_prime: 0.0,
            gap_bound: 0.0,
        });
    }
    let xplus = m.exp(&xp, &g.scale(-1.0 / lp))?;
    let p0 = ball.project(m, &xplus)?;
    let d_prime = gn / lp;
    let gap_bound = zeta(d_prime, m.curvature().kmin)? * lp * ball.diameter().powi(2) / 2.0;
    Ok(WarmStart {
        p0,
        d_prime,
        gap_bound,
    })
}

/// Constant-momentum projected accelerated gradient descent on the tangent
/// ball of radius `g.radius()`.
pub fn euclidean_agd(
    g: &PullbackObjective,
    v0: &Tangent,
    iters: usize,
    l: f64,
    mu: f64,
) -> Result<Tangent> {
    if !(mu > 0.0 && l >= mu) {
        return Err(Error::invalid(format!(
            "agd needs 0 < mu <= L, got mu={mu}, L={l}"
        )));
    }
    let m = g.manifold();
    let r = g.radius();
    let q = (l / mu).sqrt();
    let beta = (q - 1.0) / (q + 1.0);
    let mut v = tangent_ball_project(m, v0, r);
    let mut prev = v.clone();
    for _ in 0..iters {
        let w = v.axpy(beta, &v.sub(&prev)?)?;
        let gw = g.gradient(&w)?;
        let next = tangent_ball_project(m, &w.axpy(-1.0 / l, &gw)?, r);
        if !next.is_finite() {
            return Err(Error::NonFinite("agd iterate".into()));
        }
        prev = std::mem::replace(&mut v, next);
    }
    Ok(v)
}

/// Approximate minimizer of `f + d(x_k, ·)²/(2λ)` over the ball.
#[derive(Clone, Debug)]
pub struct ProxSolution {
    pub y: Point,
    pub inner_iters: usize,
}

pub fn prox_solve(
    f: &dyn Objective,
    ball: &GeodesicBall,
    x_k: &Point,
    lambda: f64,
    delta_k: f64,
    budget: &SubroutineBudget,
) -> Result<ProxSolution> {
    let m = f.manifold();
    let z2d = zeta(2.0 * ball.diameter(), m.curvature().kmin)?;
    let h = ProxObjective::new(f, x_k.clone(), lambda, z2d)?;
    let ws = warm_start(&h, ball, x_k)?;
    let pb = pullback(&h, ball.center.clone(), ball.radius);
    // Constants of the pullback: Hessian eigenvalues stay within [μ'/2, 3L'].
    let lpp = 3.0 * h.smoothness();
    let mupp = 0.5 * h.strong_convexity();
    let v0 = tangent_ball_project(m, &m.log(&ball.center, &ws.p0), ball.radius);
    let g0 = pb.gradient(&v0)?;
    let v1 = tangent_ball_project(m, &v0.axpy(-1.0 / lpp, &g0)?, ball.radius);
    let iters = budget.iterations(z2d, lambda * h.smoothness(), delta_k);
    let v = euclidean_agd(&pb, &v1, iters, lpp, mupp)?;
    let y = ball.project(m, &pb.point(&v)?)?;
    Ok(ProxSolution {
        y,
        inner_iters: iters,
    })
}
