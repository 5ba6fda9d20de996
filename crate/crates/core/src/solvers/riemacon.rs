use super::numerical_abort;
use super::prox::{prox_solve, SubroutineBudget};
use super::trace::{RunOptions, SolverTrace, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::{tangent_ball_project, zeta, GeodesicBall, Point, Tangent};
use crate::objectives::{Counted, Objective};

/// Step-size schedules of the accelerated scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemaconParams {
    pub xi: f64,
    pub lambda: f64,
}

impl RiemaconParams {
    /// Parameters for a feasible set of diameter `d` with `ζ_{2D}` given.
    pub fn new(zeta_2d: f64, l: f64) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::invalid(format!(
                "smoothness must be positive, got {l}"
            )));
        }
        Self::from_parts(4.0 * zeta_2d - 3.0, zeta_2d / l)
    }

    pub fn from_parts(xi: f64, lambda: f64) -> Result<Self> {
        if !(xi >= 1.0 && lambda > 0.0 && xi.is_finite() && lambda.is_finite()) {
            return Err(Error::invalid(format!(
                "need xi >= 1 and lambda > 0, got xi={xi}, lambda={lambda}"
            )));
        }
        Ok(RiemaconParams { xi, lambda })
    }

    pub fn a(&self, k: usize) -> f64 {
        2.0 * self.lambda * (k as f64 + 32.0 * self.xi) / 5.0
    }

    pub fn eta(&self, k: usize) -> f64 {
        self.a(k) / self.xi
    }

    pub fn delta(&self, k: usize) -> f64 {
        1.0 / ((k + 1) as f64).powi(2)
    }

    pub fn a0(&self) -> f64 {
        200.0 * self.lambda * self.xi
    }

    /// Closed form of `A_k = A_{k-1} + a_k/ξ`.
    pub fn big_a(&self, k: usize) -> f64 {
        let k = k as f64;
        self.lambda * (k * (k + 1.0 + 64.0 * self.xi) / (5.0 * self.xi) + 200.0 * self.xi)
    }
}

/// Full state after iteration `k`.
#[derive(Clone, Debug)]
pub struct RiemaconState {
    pub k: usize,
    pub x: Point,
    pub y: Point,
    pub z_x: Tangent,
    pub z_y: Tangent,
    pub z_y_bar: Tangent,
    pub big_a: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemaconConfig {
    /// Calibration constant of the iteration count when a target accuracy is given.
    pub c_t: f64,
    pub budget: SubroutineBudget,
}

impl Default for RiemaconConfig {
    fn default() -> Self {
        RiemaconConfig {
            c_t: 8.0,
            budget: SubroutineBudget::default(),
        }
    }
}

/// Stopping rule for a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stopping {
    Iterations(usize),
    /// Target gap. The iteration count follows from `c_t`, and the run stops
    /// early once a certified gap bound drops below the target.
    Accuracy(f64),
}

#[derive(Clone, Debug)]
pub struct RiemaconOutput {
    pub point: Point,
    pub trace: SolverTrace,
    pub params: RiemaconParams,
    pub states: Vec<RiemaconState>,
    /// Smallest certified upper bound on `f(y_k) − min_X f` seen, when computed.
    pub gap_bound: Option<f64>,
}

/// Running gap certificate built from gradients at the `y_k`.
pub(crate) struct GapCertificate {
    best_lower: f64,
}

impl GapCertificate {
    pub(crate) fn new() -> Self {
        GapCertificate {
            best_lower: f64::NEG_INFINITY,
        }
    }

    /// Lower bound from convexity: `f* >= f(y) − ‖g‖ max_{p∈X} d(y,p)`, and
    /// from strong convexity `f* >= f(y) − ‖g‖²/(2μ)`. Returns the certified
    /// gap of `y` against the best lower bound so far.
    pub(crate) fn update(
        &mut self,
        f: &dyn Objective,
        ball: &GeodesicBall,
        y: &Point,
        g: &Tangent,
    ) -> f64 {
        let m = f.manifold();
        let fy = f.value(y);
        let gn = m.norm(g);
        let mut drop = gn * ball.max_distance_from(m, y);
        let mu = f.strong_convexity();
        if mu > 0.0 {
            drop = drop.min(gn * gn / (2.0 * mu));
        }
        self.best_lower = self.best_lower.max(fy - drop);
        fy - self.best_lower
    }
}

fn psi(
    f: &dyn Objective,
    params: &RiemaconParams,
    y: &Point,
    z_y: &Tangent,
    big_a: f64,
    x_star: &Point,
    f_star: f64,
) -> f64 {
    let m = f.manifold();
    let to_star = m.log(y, x_star);
    let diff = z_y.sub(&to_star).expect("both based at y_k");
    big_a * (f.value(y) - f_star)
        + 0.5 * m.norm(&diff).powi(2)
        + 0.5 * (params.xi - 1.0) * m.norm(z_y).powi(2)
}

/// Lyapunov potential of a captured state against a reference minimizer.
pub fn lyapunov_value(
    f: &dyn Objective,
    params: &RiemaconParams,
    s: &RiemaconState,
    x_star: &Point,
) -> f64 {
    psi(f, params, &s.y, &s.z_y, s.big_a, x_star, f.value(x_star))
}

/// Accelerated method for g-convex `f` constrained to `ball`.
pub fn riemacon(
    f: &dyn Objective,
    ball: &GeodesicBall,
    x0: &Point,
    stop: Stopping,
    config: &RiemaconConfig,
    opts: &RunOptions,
) -> Result<RiemaconOutput> {
    riemacon_inner(f, ball, x0, stop, None, config, opts)
}

/// `cap` bounds the iteration count in accuracy mode.
pub(crate) fn riemacon_inner(
    f: &dyn Objective,
    ball: &GeodesicBall,
    x0: &Point,
    stop: Stopping,
    cap: Option<usize>,
    config: &RiemaconConfig,
    opts: &RunOptions,
) -> Result<RiemaconOutput> {
    let m = f.manifold();
    m.check_point(x0)?;
    if !ball.contains(m, x0) {
        return Err(Error::invalid(
            "riemacon must start inside the feasible ball",
        ));
    }
    let d = ball.diameter();
    let kmin = m.curvature().kmin;
    let l = f.smoothness();
    // A constant function has every point as minimizer.
    let l_eff = if l > 0.0 { l } else { 1.0 };
    let params = RiemaconParams::new(zeta(2.0 * d, kmin)?, l_eff)?;
    let (iters, target) = match stop {
        Stopping::Iterations(t) => (t, None),
        Stopping::Accuracy(eps) => {
            if !(eps > 0.0) {
                return Err(Error::invalid("target accuracy must be positive"));
            }
            let t = (config.c_t * zeta(d, kmin)? * (l * d * d / eps).sqrt()).ceil();
            let t = if t.is_finite() {
                t as usize
            } else {
                usize::MAX
            };
            (cap.map_or(t, |c| c.min(t)), Some(eps))
        }
    };

    let fc = Counted::new(f);
    let reference = opts.reference.as_ref().map(|r| (r, f.value(r)));
    let mut trace = SolverTrace::default();
    let mut states = Vec::new();
    let mut cert = GapCertificate::new();
    let mut gap_bound = None;

    let y0 = prox_solve(
        &fc,
        ball,
        x0,
        params.lambda,
        params.delta(0),
        &config.budget,
    )?;
    let mut y = y0.y;
    let mut z_y = m.zero(&y);
    let mut z_bar = z_y.clone();
    let mut big_a = params.a0();
    let row =
        |k: usize, y: &Point, z_y: &Tangent, big_a: f64, calls: u64, inner: usize| TraceRecord {
            k,
            f_value: f.value(y),
            grad_calls: calls,
            inner_iters: inner as u64,
            dist_to_ref: reference.map(|(r, _)| m.distance(y, r)),
            psi: reference.map(|(r, fs)| psi(f, &params, y, z_y, big_a, r, fs)),
        };
    trace.push(row(0, &y, &z_y, big_a, fc.calls(), y0.inner_iters));
    if opts.capture_states {
        states.push(RiemaconState {
            k: 0,
            x: x0.clone(),
            y: y.clone(),
            z_x: m.zero(x0),
            z_y: z_y.clone(),
            z_y_bar: z_bar.clone(),
            big_a,
        });
    }
    if let Some(eps) = target {
        let g = fc.gradient(&y);
        let gap = cert.update(f, ball, &y, &g);
        gap_bound = Some(gap);
        trace.records[0].grad_calls = fc.calls();
        if gap <= eps {
            return Ok(RiemaconOutput {
                point: y,
                trace,
                params,
                states,
                gap_bound,
            });
        }
    }

    for k in 1..=iters {
        let a = params.a(k);
        let x = m
            .exp(&y, &z_bar.scale(a / (big_a + a)))
            .map_err(|e| numerical_abort(e.to_string(), trace.clone()))?;
        let sol = prox_solve(
            &fc,
            ball,
            &x,
            params.lambda,
            params.delta(k),
            &config.budget,
        )
        .map_err(|e| numerical_abort(e.to_string(), trace.clone()))?;
        let y_new = sol.y;
        let v = m.log(&x, &y_new).scale(-1.0 / params.lambda);
        let moved = m.exp(&y, &z_bar)?;
        let z_x = m.log(&x, &moved).axpy(-params.eta(k), &v)?;
        let z_y_new = m.transport(&x, &y_new, &z_x)?.add(&m.log(&y_new, &x))?;
        if !z_y_new.is_finite() {
            return Err(numerical_abort(
                format!("non-finite dual iterate at k={k}"),
                trace,
            ));
        }
        z_bar = tangent_ball_project(m, &z_y_new, d);
        z_y = z_y_new;
        y = y_new;
        big_a = params.big_a(k);
        trace.push(row(k, &y, &z_y, big_a, fc.calls(), sol.inner_iters));
        if opts.capture_states {
            states.push(RiemaconState {
                k,
                x,
                y: y.clone(),
                z_x,
                z_y: z_y.clone(),
                z_y_bar: z_bar.clone(),
                big_a,
            });
        }
        if let Some(eps) = target {
            let g = fc.gradient(&y);
            let gap = cert.update(f, ball, &y, &g);
            gap_bound = Some(gap);
            trace.records[k].grad_calls = fc.calls();
            if gap <= eps {
                break;
            }
        }
    }
    Ok(RiemaconOutput {
        point: y,
        trace,
        params,
        states,
        gap_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matches_recursion() {
        for xi in [1.0, 5.0, 29.0, 997.0] {
            let p = RiemaconParams::from_parts(xi, 0.7).unwrap();
            let mut acc = p.a0();
            for k in 1..=2000 {
                acc += p.a(k) / xi;
                assert!((acc - p.big_a(k)).abs() <= 1e-10 * acc);
            }
        }
    }

    #[test]
    fn flat_parameters() {
        let p = RiemaconParams::new(1.0, 4.0).unwrap();
        assert_eq!(p.xi, 1.0);
        assert_eq!(p.lambda, 0.25);
        assert!(RiemaconParams::new(1.0, 0.0).is_err());
    }
}
