use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::LemmaReport;
use crate::error::{Error, Result};
use crate::geometry::{
    rng_from_seed, sample_in_ball, sample_point, sample_tangent, sample_unit_tangent, Manifold,
    Point,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaId {
    /// Two-sided cosine law with `δ_D`, `ζ_D` for the triangle diameter.
    Cosine,
    /// Cosine law with the constants evaluated at `d(p, x)`.
    CosineTight,
    /// Comparison of moving quadratics, with and without a perturbation.
    MovingQuadratics,
    /// Comparison of linear lower bounds at the two ends of a geodesic.
    MovingHyperplanes,
    /// Eigenvalue sandwich for the Hessian of the half squared distance.
    HessianBounds,
}

impl LemmaId {
    pub const ALL: [LemmaId; 5] = [
        LemmaId::Cosine,
        LemmaId::CosineTight,
        LemmaId::MovingQuadratics,
        LemmaId::MovingHyperplanes,
        LemmaId::HessianBounds,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::Cosine => "cosine",
            LemmaId::CosineTight => "cosine-tight",
            LemmaId::MovingQuadratics => "moving-quadratics",
            LemmaId::MovingHyperplanes => "moving-hyperplanes",
            LemmaId::HessianBounds => "hessian-bounds",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown lemma id `{s}`")))
    }
}

const TOLERANCE: f64 = 1e-8;
const HESSIAN_STEP: f64 = 1e-4;
const HESSIAN_RTOL: f64 = 1e-4;
/// Radius range of the balls the triangles are drawn from.
const MAX_SPREAD: f64 = 1.0;

/// Samples `trials` random configurations and returns the worst slack of the
/// chosen inequality family, each normalized by `max(1, D²)`.
pub fn lemma_battery(m: &Manifold, lemma: LemmaId, trials: usize, seed: u64) -> LemmaReport {
    let mut rng = rng_from_seed(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let center = sample_point(m, &mut rng, 0.5);
        let spread = MAX_SPREAD * rng.random::<f64>();
        let slack = match lemma {
            LemmaId::Cosine | LemmaId::CosineTight => {
                let x = sample_in_ball(m, &center, spread, &mut rng);
                let y = sample_in_ball(m, &center, spread, &mut rng);
                let p = sample_in_ball(m, &center, spread, &mut rng);
                cosine_slack(m, &x, &y, &p, lemma == LemmaId::CosineTight)
            }
            LemmaId::MovingQuadratics => {
                let x = sample_in_ball(m, &center, spread, &mut rng);
                let p = sample_in_ball(m, &center, spread, &mut rng);
                let zx = sample_tangent(m, &x, &mut rng, spread);
                let r = rng.random::<f64>();
                let y = m.exp(&x, &zx.scale(r)).expect("finite sample");
                let a_scale = spread * rng.random::<f64>();
                let ay = sample_tangent(m, &y, &mut rng, a_scale);
                quadratics_slack(m, &x, &y, &p, &zx, r, &ay)
            }
            LemmaId::MovingHyperplanes => {
                let x = sample_in_ball(m, &center, spread, &mut rng);
                let y = sample_in_ball(m, &center, spread, &mut rng);
                let p = sample_in_ball(m, &center, spread, &mut rng);
                hyperplanes_slack(m, &x, &y, &p)
            }
            LemmaId::HessianBounds => {
                let x = sample_in_ball(m, &center, spread, &mut rng);
                let y = sample_in_ball(m, &center, spread, &mut rng);
                let v = sample_unit_tangent(m, &y, &mut rng);
                hessian_slack(m, &x, &y, &v)
            }
        };
        worst = worst.min(slack);
    }
    LemmaReport {
        lemma: lemma.to_string(),
        manifold: m.to_string(),
        trials,
        seed,
        worst_slack: worst,
        tolerance: TOLERANCE,
    }
}

fn diameter(m: &Manifold, pts: &[&Point]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d = d.max(m.distance(pts[i], pts[j]));
        }
    }
    d
}

fn consts(m: &Manifold, d: f64) -> (f64, f64) {
    let k = m.curvature();
    (k.delta(d), k.zeta(d))
}

fn cosine_slack(m: &Manifold, x: &Point, y: &Point, p: &Point, tight: bool) -> f64 {
    let dd = diameter(m, &[x, y, p]);
    let (delta, zeta) = consts(m, if tight { m.distance(p, x) } else { dd });
    let lhs = m.inner(x, &m.log(x, y), &m.log(x, p)).expect("both at x");
    let dxy = m.distance(x, y).powi(2);
    let rest = 0.5 * m.distance(p, x).powi(2) - 0.5 * m.distance(p, y).powi(2);
    let lower = lhs - (0.5 * delta * dxy + rest);
    let upper = 0.5 * zeta * dxy + rest - lhs;
    lower.min(upper) / dd.powi(2).max(1.0)
}

fn quadratics_slack(
    m: &Manifold,
    x: &Point,
    y: &Point,
    p: &Point,
    zx: &crate::geometry::Tangent,
    r: f64,
    ay: &crate::geometry::Tangent,
) -> f64 {
    let dd = diameter(m, &[x, y, p]);
    let (delta, zeta) = consts(m, dd);
    let xi = zeta;
    let zy = m
        .transport(x, y, zx)
        .expect("at x")
        .add(&m.log(y, x))
        .expect("at y");
    let ax = m.transport(y, x, ay).expect("at y");
    let lyp = m.log(y, p);
    let lxp = m.log(x, p);
    let sq = |v: &crate::geometry::Tangent| m.norm(v).powi(2);
    let scale = dd.powi(2).max(1.0);
    let mut worst = f64::INFINITY;
    // Unperturbed pair, then the perturbed pair with the r/(1−r) penalty.
    for perturbed in [false, true] {
        let (uy, ux, pen) = if perturbed {
            let pen = 0.5 * (xi - delta) * r / (1.0 - r) * sq(&ax);
            (zy.add(ay).expect("at y"), zx.add(&ax).expect("at x"), pen)
        } else {
            (zy.clone(), zx.clone(), 0.0)
        };
        let ly = sq(&uy.sub(&lyp).expect("at y"));
        let lx = sq(&ux.sub(&lxp).expect("at x"));
        let lower = (ly + (delta - 1.0) * sq(&uy)) - (lx + (delta - 1.0) * sq(&ux) - pen);
        let upper = (lx + (xi - 1.0) * sq(&ux) + pen) - (ly + (xi - 1.0) * sq(&uy));
        worst = worst.min(lower.min(upper) / scale);
    }
    worst
}

fn hyperplanes_slack(m: &Manifold, x: &Point, y: &Point, p: &Point) -> f64 {
    let dd = diameter(m, &[x, y, p]);
    let (delta, zeta) = consts(m, dd);
    let g = m.log(y, x);
    let gx = m.log(x, y).scale(-1.0);
    let lhs = m.inner(y, &g, &m.log(y, p)).expect("at y");
    let base = m.inner(x, &gx, &m.log(x, p)).expect("at x");
    let gg = m.norm(&g).powi(2);
    let lower = lhs - (base + delta * gg);
    let upper = base + zeta * gg - lhs;
    lower.min(upper) / dd.powi(2).max(1.0)
}

fn hessian_slack(m: &Manifold, x: &Point, y: &Point, v: &crate::geometry::Tangent) -> f64 {
    let d = m.distance(x, y);
    let (delta, zeta) = consts(m, d);
    let phi = |t: f64| {
        0.5 * m
            .distance(x, &m.exp(y, &v.scale(t)).expect("finite probe"))
            .powi(2)
    };
    let h = HESSIAN_STEP;
    let hess = (phi(h) - 2.0 * phi(0.0) + phi(-h)) / (h * h);
    let nv = m.norm(v).powi(2);
    let allowance = HESSIAN_RTOL * zeta * nv;
    let lower = hess - delta * nv + allowance;
    let upper = zeta * nv - hess + allowance;
    lower.min(upper) / d.powi(2).max(1.0)
}
