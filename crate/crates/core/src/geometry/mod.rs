//! Manifold primitives for Euclidean space, hyperbolic space (hyperboloid
//! model) and SPD matrices, plus the curvature constants and projections the
//! solvers rely on.

mod ball;
mod constants;
pub mod linalg;
mod manifold;
mod sampling;

pub use ball::{metric_project_ball, tangent_ball_project, GeodesicBall};
pub use constants::{delta, zeta, CurvatureBounds};
pub use manifold::{Manifold, Point, Tangent};
pub use sampling::{
    random_point, random_tangent, rng_from_seed, sample_in_ball, sample_point, sample_tangent,
    sample_unit_tangent,
};
