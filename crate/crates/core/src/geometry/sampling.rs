use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::manifold::{Manifold, Point, Tangent};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal))
}

fn gaussian_sym<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    (&g + g.transpose()) * 0.5
}

/// Gaussian tangent vector at the origin with coordinate scale `scale`.
fn origin_tangent<R: Rng + ?Sized>(m: &Manifold, rng: &mut R, scale: f64) -> Tangent {
    let o = m.origin();
    let raw = match *m {
        Manifold::Euclidean { dim } => gaussian_vec(rng, dim),
        Manifold::Hyperbolic { dim, .. } => {
            let mut v = DVector::zeros(dim + 1);
            v.rows_mut(1, dim).copy_from(&gaussian_vec(rng, dim));
            v
        }
        Manifold::Spd { n } => DVector::from_column_slice(gaussian_sym(rng, n).as_slice()),
    };
    m.tangent(&o, raw * scale)
}

/// `exp` at the origin of a Gaussian tangent with scale `spread`.
pub fn sample_point<R: Rng + ?Sized>(m: &Manifold, rng: &mut R, spread: f64) -> Point {
    let o = m.origin();
    let v = origin_tangent(m, rng, spread);
    m.exp(&o, &v).expect("finite sample")
}

/// Gaussian tangent at `x`, isotropic in the metric at `x`.
pub fn sample_tangent<R: Rng + ?Sized>(
    m: &Manifold,
    x: &Point,
    rng: &mut R,
    scale: f64,
) -> Tangent {
    let o = m.origin();
    let v = origin_tangent(m, rng, scale);
    m.transport(&o, x, &v).expect("origin-based tangent")
}

/// Uniform direction of unit norm at `x`.
pub fn sample_unit_tangent<R: Rng + ?Sized>(m: &Manifold, x: &Point, rng: &mut R) -> Tangent {
    loop {
        let v = sample_tangent(m, x, rng, 1.0);
        let n = m.norm(&v);
        if n > 1e-12 {
            return v.scale(1.0 / n);
        }
    }
}

/// Point sampled inside the ball `B(center, radius)`.
pub fn sample_in_ball<R: Rng + ?Sized>(
    m: &Manifold,
    center: &Point,
    radius: f64,
    rng: &mut R,
) -> Point {
    let u = sample_unit_tangent(m, center, rng);
    let r = radius * rng.random::<f64>().powf(1.0 / m.dim() as f64);
    m.exp(center, &u.scale(r)).expect("finite sample")
}

pub fn random_point(m: &Manifold, seed: u64, spread: f64) -> Point {
    sample_point(m, &mut rng_from_seed(seed), spread)
}

pub fn random_tangent(m: &Manifold, x: &Point, seed: u64) -> Tangent {
    sample_tangent(m, x, &mut rng_from_seed(seed), 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_degenerate() {
        for m in ["euclidean:3", "hyperbolic:2:4", "spd:3"] {
            let m: Manifold = m.parse().unwrap();
            assert_eq!(random_point(&m, 9, 0.7), random_point(&m, 9, 0.7));
            assert_eq!(random_point(&m, 9, 0.0), m.origin());
            let x = random_point(&m, 1, 1.0);
            assert_eq!(random_tangent(&m, &x, 3), random_tangent(&m, &x, 3));
        }
    }
}
