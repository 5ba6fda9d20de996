use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::Objective;
use crate::error::{Error, Result};
use crate::geometry::{GeodesicBall, Manifold, Point, Tangent};

/// `f(x) = ½ xᵀAx − bᵀx` on Euclidean space, with `A` symmetric PSD.
#[derive(Clone, Debug)]
pub struct QuadraticObjective {
    manifold: Manifold,
    a: DMatrix<f64>,
    b: DVector<f64>,
    domain: GeodesicBall,
    l: f64,
    mu: f64,
}

impl QuadraticObjective {
    pub fn new(
        m: Manifold,
        a: DMatrix<f64>,
        b: DVector<f64>,
        domain: GeodesicBall,
    ) -> Result<Self> {
        let Manifold::Euclidean { dim } = m else {
            return Err(Error::invalid(
                "quadratic objectives live on euclidean space",
            ));
        };
        if a.nrows() != dim || a.ncols() != dim || b.len() != dim {
            return Err(Error::invalid(
                "quadratic dimensions do not match the manifold",
            ));
        }
        let a = (&a + a.transpose()) * 0.5;
        let eig = SymmetricEigen::new(a.clone()).eigenvalues;
        let mu = eig.min();
        if mu < -1e-12 * eig.amax().max(1.0) {
            return Err(Error::invalid(
                "quadratic matrix must be positive semidefinite",
            ));
        }
        Ok(QuadraticObjective {
            manifold: m,
            a,
            b,
            domain,
            l: eig.max().max(0.0),
            mu: mu.max(0.0),
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn linear(&self) -> &DVector<f64> {
        &self.b
    }
}

impl Objective for QuadraticObjective {
    fn manifold(&self) -> &Manifold {
        &self.manifold
    }
    fn value(&self, x: &Point) -> f64 {
        let x = x.coords();
        0.5 * x.dot(&(&self.a * x)) - self.b.dot(x)
    }
    fn gradient(&self, x: &Point) -> Tangent {
        Tangent::from_parts(x.clone(), &self.a * x.coords() - &self.b)
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

/// A constant function on any manifold.
#[derive(Clone, Debug)]
pub struct ConstantObjective {
    manifold: Manifold,
    value: f64,
    domain: GeodesicBall,
}

impl ConstantObjective {
    pub fn new(m: Manifold, value: f64, domain: GeodesicBall) -> Self {
        ConstantObjective {
            manifold: m,
            value,
            domain,
        }
    }
}

impl Objective for ConstantObjective {
    fn manifold(&self) -> &Manifold {
        &self.manifold
    }
    fn value(&self, _x: &Point) -> f64 {
        self.value
    }
    fn gradient(&self, x: &Point) -> Tangent {
        self.manifold.zero(x)
    }
    fn smoothness(&self) -> f64 {
        0.0
    }
    fn strong_convexity(&self) -> f64 {
        0.0
    }
    fn domain(&self) -> &GeodesicBall {
        &self.domain
    }
}
