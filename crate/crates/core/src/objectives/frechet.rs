use nalgebra::DVector;

use super::Objective;
use crate::error::{Error, Result};
use crate::geometry::{zeta, GeodesicBall, Manifold, Point, Tangent};

/// A totally geodesic hyperplane through `point` with unit normal `normal`
/// (a tangent vector at `point`).
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneAnchor {
    pub point: Point,
    pub normal: DVector<f64>,
    pub weight: f64,
}

impl HyperplaneAnchor {
    pub fn new(m: &Manifold, point: Point, direction: &Tangent, weight: f64) -> Result<Self> {
        if matches!(m, Manifold::Spd { .. }) {
            return Err(Error::Unavailable("hyperplane anchors on spd".into()));
        }
        direction.ensure_base(&point)?;
        let n = m.norm(direction);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::invalid(
                "hyperplane normal must be a nonzero finite vector",
            ));
        }
        if !(weight >= 0.0 && weight.is_finite()) {
            return Err(Error::invalid(
                "hyperplane weight must be finite and nonnegative",
            ));
        }
        let normal = m.tangent(&point, direction.vec() / n).vec().clone();
        Ok(HyperplaneAnchor {
            point,
            normal,
            weight,
        })
    }

    /// Signed distance from `x` to the hyperplane.
    pub fn signed_distance(&self, m: &Manifold, x: &Point) -> f64 {
        match *m {
            Manifold::Euclidean { .. } => (x.coords() - self.point.coords()).dot(&self.normal),
            Manifold::Hyperbolic { c, .. } => {
                let s = minkowski(x.coords(), &self.normal);
                (c.sqrt() * s).asinh() / c.sqrt()
            }
            Manifold::Spd { .. } => unreachable!("rejected at construction"),
        }
    }

    /// Gradient of `½ d_H(x)²`.
    fn half_sq_gradient(&self, m: &Manifold, x: &Point) -> Tangent {
        let d = self.signed_distance(m, x);
        match *m {
            Manifold::Euclidean { .. } => Tangent::from_parts(x.clone(), &self.normal * d),
            Manifold::Hyperbolic { c, .. } => {
                let s = minkowski(x.coords(), &self.normal);
                let unit = (&self.normal + x.coords() * (c * s)) / (1.0 + c * s * s).sqrt();
                m.tangent(x, unit * d)
            }
            Manifold::Spd { .. } => unreachable!("rejected at construction"),
        }
    }
}

fn minkowski(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    let mut s = -u[0] * v[0];
    for i in 1..u.len() {
        s += u[i] * v[i];
    }
    s
}

/// Weighted sum of half squared distances to anchor points and, optionally,
/// to hyperplanes. The hyperplane terms make it possible to dial in a large
/// condition number without leaving the range of f64.
#[derive(Clone, Debug, PartialEq)]
pub struct FrechetMeanProblem {
    pub anchors: Vec<Point>,
    pub weights: Vec<f64>,
    pub hyperplanes: Vec<HyperplaneAnchor>,
}

impl FrechetMeanProblem {
    pub fn new(anchors: Vec<Point>, weights: Vec<f64>) -> Self {
        FrechetMeanProblem {
            anchors,
            weights,
            hyperplanes: Vec::new(),
        }
    }

    pub fn uniform(anchors: Vec<Point>) -> Self {
        let w = vec![1.0 / anchors.len().max(1) as f64; anchors.len()];
        Self::new(anchors, w)
    }
}

#[derive(Clone, Debug)]
pub struct FrechetObjective {
    manifold: Manifold,
    problem: FrechetMeanProblem,
    domain: GeodesicBall,
    l: f64,
    mu: f64,
}

pub fn frechet_objective(
    m: &Manifold,
    problem: FrechetMeanProblem,
    domain: GeodesicBall,
) -> Result<FrechetObjective> {
    if problem.anchors.is_empty() {
        return Err(Error::invalid(
            "frechet objective needs at least one anchor",
        ));
    }
    if problem.anchors.len() != problem.weights.len() {
        return Err(Error::invalid("anchors and weights differ in length"));
    }
    if problem.weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
        return Err(Error::invalid("weights must be positive and finite"));
    }
    for p in &problem.anchors {
        m.check_point(p)?;
    }
    m.check_point(&domain.center)?;
    let kmin = m.curvature().kmin;
    let total: f64 = problem.weights.iter().sum();
    // The Hessian of ½d(p,·)² at y is bounded by ζ at d(p, y), and every y in
    // the domain is within d(p, center) + radius of p.
    let reach = problem
        .anchors
        .iter()
        .map(|p| domain.max_distance_from(m, p))
        .fold(0.0, f64::max);
    let mut l = zeta(reach, kmin)? * total;
    for h in &problem.hyperplanes {
        let reach_h = h.signed_distance(m, &domain.center).abs() + domain.radius;
        l += h.weight * zeta(reach_h, kmin)?;
    }
    Ok(FrechetObjective {
        manifold: m.clone(),
        problem,
        domain,
        l,
        mu: total,
    })
}

impl FrechetObjective {
    pub fn problem(&self) -> &FrechetMeanProblem {
        &self.problem
    }

    /// Builds the objective with one extra hyperplane term whose weight makes
    /// the declared `L / mu` equal to `kappa`.
    pub fn with_condition_number(
        m: &Manifold,
        problem: FrechetMeanProblem,
        plane_point: Point,
        plane_direction: &Tangent,
        domain: GeodesicBall,
        kappa: f64,
    ) -> Result<FrechetObjective> {
        let base = frechet_objective(m, problem.clone(), domain.clone())?;
        let base_kappa = base.l / base.mu;
        if !(kappa >= base_kappa) {
            return Err(Error::invalid(format!(
                "condition number {kappa} is below the intrinsic value {base_kappa:.4}"
            )));
        }
        let probe = HyperplaneAnchor::new(m, plane_point, plane_direction, 1.0)?;
        let reach = probe.signed_distance(m, &domain.center).abs() + domain.radius;
        let per_weight = zeta(reach, m.curvature().kmin)?;
        let weight = (kappa - base_kappa) * base.mu / per_weight;
        let mut problem = problem;
        problem
            .hyperplanes
            .push(HyperplaneAnchor { weight, ..probe });
        frechet_objective(m, problem, domain)
    }
}

impl Objective for FrechetObjective {
    fn manifold(&self) -> &Manifold {
        &self.manifold
    }

    fn value(&self, y: &Point) -> f64 {
        let m = &self.manifold;
        let mut v = 0.0;
        for (p, w) in self.problem.anchors.iter().zip(&self.problem.weights) {
            v += 0.5 * w * m.distance(p, y).powi(2);
        }
        for h in &self.problem.hyperplanes {
            v += 0.5 * h.weight * h.signed_distance(m, y).powi(2);
        }
        v
    }

    fn gradient(&self, y: &Point) -> Tangent {
        let m = &self.manifold;
        let mut g = DVector::zeros(m.coord_len());
        for (p, w) in self.problem.anchors.iter().zip(&self.problem.weights) {
            g -= m.log(y, p).vec() * *w;
        }
        for h in &self.problem.hyperplanes {
            g += h.half_sq_gradient(m, y).vec() * h.weight;
        }
        m.tangent(y, g)
    }

    fn smoothness(&self) -> f64 {
        self.l
    }

    fn strong_convexity(&self) -> f64 {
        self.mu
    }

    fn domain(&self) -> &GeodesicBall {
        &self.domain
    }
}
