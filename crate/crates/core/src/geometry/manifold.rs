use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use super::constants::CurvatureBounds;
use super::linalg::{symmetrize, SpdRoots, SymEig};
use crate::error::{Error, Result};

/// A point stored by its coordinates. Euclidean points are vectors, hyperboloid
/// points are ambient Minkowski coordinates, SPD points are row-major matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(DVector<f64>);

impl Point {
    pub fn new(coords: DVector<f64>) -> Self {
        Point(coords)
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Point(DVector::from_column_slice(coords))
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    fn same_as(&self, other: &Point) -> bool {
        if self.0.len() != other.0.len() {
            return false;
        }
        let scale = 1.0 + self.0.amax();
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| (a - b).abs() <= 1e-12 * scale)
    }
}

/// A tangent vector together with the point it is attached to.
#[derive(Clone, Debug, PartialEq)]
pub struct Tangent {
    base: Point,
    vec: DVector<f64>,
}

impl Tangent {
    /// Attaches raw components to `base` without projecting. Use
    /// [`Manifold::tangent`] to enforce the tangent-space constraint.
    pub fn from_parts(base: Point, vec: DVector<f64>) -> Self {
        Tangent { base, vec }
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn vec(&self) -> &DVector<f64> {
        &self.vec
    }

    pub fn is_based_at(&self, x: &Point) -> bool {
        self.base.same_as(x)
    }

    pub fn ensure_base(&self, x: &Point) -> Result<()> {
        if self.is_based_at(x) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn scale(&self, s: f64) -> Tangent {
        Tangent {
            base: self.base.clone(),
            vec: &self.vec * s,
        }
    }

    pub fn add(&self, other: &Tangent) -> Result<Tangent> {
        other.ensure_base(&self.base)?;
        Ok(Tangent {
            base: self.base.clone(),
            vec: &self.vec + &other.vec,
        })
    }

    pub fn sub(&self, other: &Tangent) -> Result<Tangent> {
        other.ensure_base(&self.base)?;
        Ok(Tangent {
            base: self.base.clone(),
            vec: &self.vec - &other.vec,
        })
    }

    /// `self + s * other`
    pub fn axpy(&self, s: f64, other: &Tangent) -> Result<Tangent> {
        other.ensure_base(&self.base)?;
        Ok(Tangent {
            base: self.base.clone(),
            vec: &self.vec + &other.vec * s,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.vec.iter().all(|c| c.is_finite())
    }
}

/// The three supported Hadamard manifolds.
#[derive(Clone, Debug, PartialEq)]
pub enum Manifold {
    Euclidean {
        dim: usize,
    },
    /// Hyperboloid `{x : <x,x>_M = -1/c, x0 > 0}` of curvature `-c`.
    Hyperbolic {
        dim: usize,
        c: f64,
    },
    /// SPD matrices with the affine-invariant metric.
    Spd {
        n: usize,
    },
}

impl FromStr for Manifold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidManifold(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let dim = |p: &str| -> Result<usize> {
            match p.parse::<usize>() {
                Ok(d) if d >= 1 => Ok(d),
                _ => Err(bad()),
            }
        };
        match parts.as_slice() {
            ["euclidean", n] => Ok(Manifold::Euclidean { dim: dim(n)? }),
            ["hyperbolic", n, c] => {
                let c: f64 = c.parse().map_err(|_| bad())?;
                if !(c > 0.0 && c.is_finite()) {
                    return Err(bad());
                }
                Ok(Manifold::Hyperbolic { dim: dim(n)?, c })
            }
            ["spd", n] => Ok(Manifold::Spd { n: dim(n)? }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifold::Euclidean { dim } => write!(f, "euclidean:{dim}"),
            Manifold::Hyperbolic { dim, c } => write!(f, "hyperbolic:{dim}:{c}"),
            Manifold::Spd { n } => write!(f, "spd:{n}"),
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

fn mat(n: usize, v: &DVector<f64>) -> DMatrix<f64> {
    DMatrix::from_column_slice(n, n, v.as_slice())
}

fn flat(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(symmetrize(m).as_slice())
}

impl Manifold {
    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        match *self {
            Manifold::Euclidean { dim } | Manifold::Hyperbolic { dim, .. } => dim,
            Manifold::Spd { n } => n * (n + 1) / 2,
        }
    }

    /// Length of the coordinate vector of points and tangents.
    pub fn coord_len(&self) -> usize {
        match *self {
            Manifold::Euclidean { dim } => dim,
            Manifold::Hyperbolic { dim, .. } => dim + 1,
            Manifold::Spd { n } => n * n,
        }
    }

    pub fn curvature(&self) -> CurvatureBounds {
        match *self {
            Manifold::Euclidean { .. } => CurvatureBounds::flat(),
            Manifold::Hyperbolic { c, .. } => CurvatureBounds { kmin: -c, kmax: -c },
            Manifold::Spd { .. } => CurvatureBounds {
                kmin: -0.5,
                kmax: 0.0,
            },
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, Manifold::Euclidean { .. })
    }

    /// Canonical base point: zero, the hyperboloid apex, or the identity.
    pub fn origin(&self) -> Point {
        match *self {
            Manifold::Euclidean { dim } => Point(DVector::zeros(dim)),
            Manifold::Hyperbolic { dim, c } => {
                let mut v = DVector::zeros(dim + 1);
                v[0] = 1.0 / c.sqrt();
                Point(v)
            }
            Manifold::Spd { n } => Point(flat(&DMatrix::identity(n, n))),
        }
    }

    /// Validates coordinates and returns them as a point.
    pub fn point(&self, coords: &[f64]) -> Result<Point> {
        let p = Point::from_slice(coords);
        self.check_point(&p)?;
        Ok(p)
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.0.len() != self.coord_len() {
            return Err(Error::invalid(format!(
                "{self} expects {} coordinates, got {}",
                self.coord_len(),
                x.0.len()
            )));
        }
        if !x.is_finite() {
            return Err(Error::NonFinite("point coordinates".into()));
        }
        match *self {
            Manifold::Euclidean { .. } => Ok(()),
            Manifold::Hyperbolic { c, .. } => {
                let q = -c * minkowski(&x.0, &x.0);
                let scale = c * x.0.norm_squared();
                if x.0[0] <= 0.0 || (q - 1.0).abs() > 1e-10 * scale.max(1.0) {
                    return Err(Error::invalid("point is not on the hyperboloid sheet"));
                }
                Ok(())
            }
            Manifold::Spd { n } => {
                let m = mat(n, &x.0);
                let asym = (&m - m.transpose()).amax();
                if asym > 1e-12 * m.amax().max(1.0) {
                    return Err(Error::invalid("matrix is not symmetric"));
                }
                if SymEig::new(&m).values.min() <= 0.0 {
                    return Err(Error::invalid("matrix is not positive definite"));
                }
                Ok(())
            }
        }
    }

    /// Projects raw components onto the tangent space at `x`.
    pub fn tangent(&self, x: &Point, raw: DVector<f64>) -> Tangent {
        let vec = match *self {
            Manifold::Euclidean { .. } => raw,
            Manifold::Hyperbolic { c, .. } => {
                let s = c * minkowski(&x.0, &raw);
                &raw + &x.0 * s
            }
            Manifold::Spd { n } => flat(&mat(n, &raw)),
        };
        Tangent {
            base: x.clone(),
            vec,
        }
    }

    pub fn zero(&self, x: &Point) -> Tangent {
        Tangent {
            base: x.clone(),
            vec: DVector::zeros(self.coord_len()),
        }
    }

    /// Riemannian metric at `x`.
    pub fn inner(&self, x: &Point, u: &Tangent, v: &Tangent) -> Result<f64> {
        u.ensure_base(x)?;
        v.ensure_base(x)?;
        Ok(self.inner_unchecked(x, &u.vec, &v.vec))
    }

    fn inner_unchecked(&self, x: &Point, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        match *self {
            Manifold::Euclidean { .. } => u.dot(v),
            Manifold::Hyperbolic { .. } => minkowski(u, v),
            Manifold::Spd { n } => {
                let roots = SpdRoots::new(&mat(n, &x.0));
                let a = roots.whiten(&mat(n, u));
                let b = roots.whiten(&mat(n, v));
                a.dot(&b)
            }
        }
    }

    pub fn norm(&self, v: &Tangent) -> f64 {
        let sq = self.inner_unchecked(&v.base, &v.vec, &v.vec);
        // Clamp roundoff below zero but let NaN through.
        if sq < 0.0 {
            0.0
        } else {
            sq.sqrt()
        }
    }

    pub fn exp(&self, x: &Point, v: &Tangent) -> Result<Point> {
        v.ensure_base(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite("tangent vector passed to exp".into()));
        }
        if v.vec.iter().all(|&c| c == 0.0) {
            return Ok(x.clone());
        }
        let y = match *self {
            Manifold::Euclidean { .. } => Point(&x.0 + &v.vec),
            Manifold::Hyperbolic { c, .. } => {
                let sc = c.sqrt();
                let nv = minkowski(&v.vec, &v.vec).max(0.0).sqrt();
                let t = sc * nv;
                let s = if t < 1e-8 {
                    1.0 + t * t / 6.0
                } else {
                    t.sinh() / t
                };
                let y = &x.0 * t.cosh() + &v.vec * s;
                Point(renormalize(y, c))
            }
            Manifold::Spd { n } => {
                let roots = SpdRoots::new(&mat(n, &x.0));
                let inner = SymEig::new(&roots.whiten(&mat(n, &v.vec))).apply(f64::exp);
                Point(flat(&roots.color(&inner)))
            }
        };
        if !y.is_finite() {
            return Err(Error::NonFinite("exp overflowed".into()));
        }
        Ok(y)
    }

    pub fn log(&self, x: &Point, y: &Point) -> Tangent {
        let vec = match *self {
            Manifold::Euclidean { .. } => &y.0 - &x.0,
            Manifold::Hyperbolic { c, .. } => {
                let d = self.distance(x, y);
                if d == 0.0 {
                    DVector::zeros(x.0.len())
                } else {
                    let u = &y.0 + &x.0 * (c * minkowski(&x.0, &y.0));
                    let nu = minkowski(&u, &u);
                    let u = if nu > 0.0 {
                        u / nu.sqrt()
                    } else {
                        return self.zero(x);
                    };
                    let v = u * d;
                    let s = c * minkowski(&x.0, &v);
                    &v + &x.0 * s
                }
            }
            Manifold::Spd { n } => {
                let roots = SpdRoots::new(&mat(n, &x.0));
                let inner = SymEig::new(&roots.whiten(&mat(n, &y.0)))
                    .apply(|l| l.max(super::linalg::EIG_FLOOR).ln());
                flat(&roots.color(&inner))
            }
        };
        Tangent {
            base: x.clone(),
            vec,
        }
    }

    pub fn distance(&self, x: &Point, y: &Point) -> f64 {
        match *self {
            Manifold::Euclidean { .. } => (&y.0 - &x.0).norm(),
            Manifold::Hyperbolic { c, .. } => {
                // Chord form: <y-x, y-x>_M = (4/c) sinh^2(sqrt(c) d / 2).
                let w = &y.0 - &x.0;
                let q = minkowski(&w, &w).max(0.0);
                let sc = c.sqrt();
                2.0 / sc * (sc * q.sqrt() / 2.0).asinh()
            }
            Manifold::Spd { n } => {
                let roots = SpdRoots::new(&mat(n, &x.0));
                let e = SymEig::new(&roots.whiten(&mat(n, &y.0)));
                e.values
                    .iter()
                    .map(|l| l.max(super::linalg::EIG_FLOOR).ln().powi(2))
                    .sum::<f64>()
                    .sqrt()
            }
        }
    }

    /// Parallel transport of `v` along the geodesic from `x` to `y`.
    pub fn transport(&self, x: &Point, y: &Point, v: &Tangent) -> Result<Tangent> {
        v.ensure_base(x)?;
        let vec = match *self {
            Manifold::Euclidean { .. } => v.vec.clone(),
            Manifold::Hyperbolic { c, .. } => {
                let s = c * minkowski(&y.0, &v.vec) / (1.0 - c * minkowski(&x.0, &y.0));
                let w = &v.vec + (&x.0 + &y.0) * s;
                let t = c * minkowski(&y.0, &w);
                &w + &y.0 * t
            }
            Manifold::Spd { n } => {
                let roots = SpdRoots::new(&mat(n, &x.0));
                let half = SymEig::new(&roots.whiten(&mat(n, &y.0)))
                    .apply(|l| l.max(super::linalg::EIG_FLOOR).sqrt());
                let e = &roots.sqrt * half * &roots.inv_sqrt;
                flat(&(&e * mat(n, &v.vec) * e.transpose()))
            }
        };
        Ok(Tangent {
            base: y.clone(),
            vec,
        })
    }

    /// Adjoint of the differential of `exp_c` at `v`, applied to `w` based at
    /// `exp_c(v)`. This is the chain rule for pullbacks `v ↦ h(exp_c(v))`.
    pub fn exp_adjoint_differential(&self, c: &Point, v: &Tangent, w: &Tangent) -> Result<Tangent> {
        v.ensure_base(c)?;
        match *self {
            Manifold::Euclidean { .. } => Ok(Tangent {
                base: c.clone(),
                vec: w.vec.clone(),
            }),
            Manifold::Hyperbolic { c: curv, .. } => {
                let y = self.exp(c, v)?;
                w.ensure_base(&y)?;
                let r = self.norm(v);
                let back = self.transport(&y, c, w)?;
                if r == 0.0 {
                    return Ok(back);
                }
                let t = curv.sqrt() * r;
                let s = if t < 1e-8 {
                    1.0 + t * t / 6.0
                } else {
                    t.sinh() / t
                };
                let u = &v.vec / r;
                let radial = &u * minkowski(&back.vec, &u);
                let perp = &back.vec - &radial;
                Ok(Tangent {
                    base: c.clone(),
                    vec: radial + perp * s,
                })
            }
            Manifold::Spd { n } => {
                let roots = SpdRoots::new(&mat(n, &c.0));
                let eig = SymEig::new(&roots.whiten(&mat(n, &v.vec)));
                let y = Point(flat(&roots.color(&eig.apply(f64::exp))));
                w.ensure_base(&y)?;
                let q = &eig.vectors;
                // In the eigenbasis of S = C^{-1/2} V C^{-1/2}:
                // G = e^{-Λ} Qᵀ C^{-1/2} W C^{-1/2} Q e^{-Λ}.
                let wt = q.transpose() * roots.whiten(&mat(n, &w.vec)) * q;
                let lam = &eig.values;
                let mut g = DMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        let dd = super::linalg::exp_divided_difference(lam[i], lam[j]);
                        g[(i, j)] = wt[(i, j)] * (-lam[i]).exp() * (-lam[j]).exp() * dd;
                    }
                }
                let grad_s = q * g * q.transpose();
                Ok(Tangent {
                    base: c.clone(),
                    vec: flat(&roots.color(&grad_s)),
                })
            }
        }
    }
}

// Recomputes the time coordinate from the spatial ones. Rescaling the whole
// vector instead amplifies roundoff far from the origin.
fn renormalize(mut y: DVector<f64>, c: f64) -> DVector<f64> {
    let spatial = y.rows(1, y.len() - 1).norm_squared();
    y[0] = (1.0 / c + spatial).sqrt();
    y
}
