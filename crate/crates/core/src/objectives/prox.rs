use super::Objective;
use crate::error::{Error, Result};
use crate::geometry::{zeta, GeodesicBall, Manifold, Point, Tangent};

/// `h(y) = f(y) + d(center, y)² / (2λ)`.
pub struct ProxObjective<'a> {
    base: &'a dyn Objective,
    center: Point,
    lambda: f64,
    l: f64,
    mu: f64,
}

impl<'a> ProxObjective<'a> {
    /// `zeta` bounds the Hessian of `½d(center, ·)²` on the region of interest.
    pub fn new(base: &'a dyn Objective, center: Point, lambda: f64, zeta: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid(format!(
                "prox parameter must be positive, got {lambda}"
            )));
        }
        Ok(ProxObjective {
            l: base.smoothness() + zeta / lambda,
            mu: base.strong_convexity() + 1.0 / lambda,
            base,
            center,
            lambda,
        })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Prox objective whose constants are valid on `region`.
pub fn prox_objective<'a>(
    f: &'a dyn Objective,
    center: Point,
    lambda: f64,
    region: &GeodesicBall,
) -> Result<ProxObjective<'a>> {
    let reach = region.max_distance_from(f.manifold(), &center);
    let z = zeta(reach, f.manifold().curvature().kmin)?;
    ProxObjective::new(f, center, lambda, z)
}

impl Objective for ProxObjective<'_> {
    fn manifold(&self) -> &Manifold {
        self.base.manifold()
    }

    fn value(&self, y: &Point) -> f64 {
        let d = self.manifold().distance(&self.center, y);
        self.base.value(y) + d * d / (2.0 * self.lambda)
    }

    fn gradient(&self, y: &Point) -> Tangent {
        let g = self.base.gradient(y);
        let to_center = self.manifold().log(y, &self.center);
        g.axpy(-1.0 / self.lambda, &to_center)
            .expect("both vectors are based at y")
    }

    fn smoothness(&self) -> f64 {
        self.l
    }

    fn strong_convexity(&self) -> f64 {
        self.mu
    }

    fn domain(&self) -> &GeodesicBall {
        self.base.domain()
    }
}
