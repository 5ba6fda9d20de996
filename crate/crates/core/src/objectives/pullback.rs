use super::Objective;
use crate::error::Result;
use crate::geometry::{Manifold, Point, Tangent};

/// `ĥ(v) = h(exp_c(v))` on the tangent space at the chart center `c`.
pub struct PullbackObjective<'a> {
    source: &'a dyn Objective,
    center: Point,
    radius: f64,
}

pub fn pullback<'a>(h: &'a dyn Objective, center: Point, radius: f64) -> PullbackObjective<'a> {
    PullbackObjective {
        source: h,
        center,
        radius,
    }
}

impl PullbackObjective<'_> {
    pub fn manifold(&self) -> &Manifold {
        self.source.manifold()
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    /// Radius of the feasible tangent ball.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn source(&self) -> &dyn Objective {
        self.source
    }

    pub fn point(&self, v: &Tangent) -> Result<Point> {
        self.manifold().exp(&self.center, v)
    }

    pub fn value(&self, v: &Tangent) -> Result<f64> {
        Ok(self.source.value(&self.point(v)?))
    }

    pub fn gradient(&self, v: &Tangent) -> Result<Tangent> {
        let m = self.manifold();
        let y = self.point(v)?;
        let w = self.source.gradient(&y);
        m.exp_adjoint_differential(&self.center, v, &w)
    }
}
