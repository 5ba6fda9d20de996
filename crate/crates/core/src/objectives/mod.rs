//! Geodesically convex objectives with certified smoothness and strong
//! convexity constants.

mod frechet;
mod instances;
mod prox;
mod pullback;
mod quadratic;

use std::cell::Cell;

pub use frechet::{frechet_objective, FrechetMeanProblem, FrechetObjective, HyperplaneAnchor};
pub use instances::{FrechetInstance, FrechetInstanceSpec};
pub use prox::{prox_objective, ProxObjective};
pub use pullback::{pullback, PullbackObjective};
pub use quadratic::{ConstantObjective, QuadraticObjective};

use crate::geometry::{rng_from_seed, sample_unit_tangent, GeodesicBall, Manifold, Point, Tangent};

pub trait Objective {
    fn manifold(&self) -> &Manifold;
    fn value(&self, x: &Point) -> f64;
    /// Riemannian gradient, based at `x`.
    fn gradient(&self, x: &Point) -> Tangent;
    /// Smoothness constant `L` on the domain.
    fn smoothness(&self) -> f64;
    /// Strong geodesic convexity constant `mu` on the domain.
    fn strong_convexity(&self) -> f64;
    /// Region on which the constants hold.
    fn domain(&self) -> &GeodesicBall;
}

/// Counts gradient evaluations of the wrapped objective.
pub struct Counted<'a> {
    inner: &'a dyn Objective,
    calls: Cell<u64>,
}

impl<'a> Counted<'a> {
    pub fn new(inner: &'a dyn Objective) -> Self {
        Counted {
            inner,
            calls: Cell::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.get()
    }
}

impl Objective for Counted<'_> {
    fn manifold(&self) -> &Manifold {
        self.inner.manifold()
    }
    fn value(&self, x: &Point) -> f64 {
        self.inner.value(x)
    }
    fn gradient(&self, x: &Point) -> Tangent {
        self.calls.set(self.calls.get() + 1);
        self.inner.gradient(x)
    }
    fn smoothness(&self) -> f64 {
        self.inner.smoothness()
    }
    fn strong_convexity(&self) -> f64 {
        self.inner.strong_convexity()
    }
    fn domain(&self) -> &GeodesicBall {
        self.inner.domain()
    }
}

/// Finite-difference step used by the gradient checks.
pub fn fd_step(x: &Point) -> f64 {
    1e-5 * (1.0 + x.coords().norm())
}

/// Worst relative error between `<grad f(x), v>` and a central difference of
/// `t ↦ f(exp(x, t v))` over `trials` random unit directions. Errors are
/// measured relative to `max(1, |<grad f(x), v>|)`.
pub fn grad_check(f: &dyn Objective, x: &Point, trials: usize, seed: u64) -> f64 {
    let m = f.manifold();
    let g = f.gradient(x);
    let h = fd_step(x);
    let mut rng = rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let v = sample_unit_tangent(m, x, &mut rng);
        let plus = m.exp(x, &v.scale(h)).expect("finite probe");
        let minus = m.exp(x, &v.scale(-h)).expect("finite probe");
        let fd = (f.value(&plus) - f.value(&minus)) / (2.0 * h);
        let an = m.inner(x, &g, &v).expect("gradient based at x");
        worst = worst.max((fd - an).abs() / an.abs().max(1.0));
    }
    worst
}
