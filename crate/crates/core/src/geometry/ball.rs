use super::manifold::{Manifold, Point, Tangent};
use crate::error::{Error, Result};

/// Closed geodesic ball. Balls are geodesically convex on Hadamard manifolds.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicBall {
    pub center: Point,
    pub radius: f64,
}

impl GeodesicBall {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!(
                "ball radius must be finite and nonnegative, got {radius}"
            )));
        }
        Ok(GeodesicBall { center, radius })
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.radius
    }

    pub fn contains(&self, m: &Manifold, y: &Point) -> bool {
        m.distance(&self.center, y) <= self.radius + 1e-12
    }

    /// Largest distance from `p` to a point of the ball.
    pub fn max_distance_from(&self, m: &Manifold, p: &Point) -> f64 {
        m.distance(&self.center, p) + self.radius
    }

    /// Nearest point of the ball: radial along the geodesic from the center.
    pub fn project(&self, m: &Manifold, y: &Point) -> Result<Point> {
        metric_project_ball(m, self, y)
    }
}

pub fn metric_project_ball(m: &Manifold, ball: &GeodesicBall, y: &Point) -> Result<Point> {
    if m.distance(&ball.center, y) <= ball.radius {
        return Ok(y.clone());
    }
    let v = m.log(&ball.center, y);
    let n = m.norm(&v);
    if n == 0.0 {
        return Ok(ball.center.clone());
    }
    m.exp(&ball.center, &v.scale(ball.radius / n))
}

/// Euclidean projection onto the tangent ball `{‖u‖ <= r}`.
pub fn tangent_ball_project(m: &Manifold, v: &Tangent, r: f64) -> Tangent {
    let n = m.norm(v);
    if n <= r {
        v.clone()
    } else {
        v.scale(r / n)
    }
}
