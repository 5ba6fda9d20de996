//! Fixtures shared by the benchmarks.

use riemacon::objectives::{FrechetInstance, FrechetInstanceSpec};
use riemacon::Manifold;

/// Manifolds the benchmarks sweep over.
pub const MANIFOLDS: [&str; 4] = ["euclidean:8", "hyperbolic:2:1", "hyperbolic:8:1", "spd:3"];

pub fn manifold(id: &str) -> Manifold {
    id.parse().expect("valid manifold id")
}

/// Seeded Fréchet instance on `id`, optionally at condition number `kappa`.
/// Conditioning is not available on SPD, where `kappa` is ignored.
pub fn frechet(id: &str, seed: u64, kappa: Option<f64>) -> (Manifold, FrechetInstance) {
    let m = manifold(id);
    let kappa = if matches!(m, Manifold::Spd { .. }) {
        None
    } else {
        kappa
    };
    let inst = FrechetInstanceSpec {
        seed,
        radius: 0.3,
        spread: 0.5,
        kappa,
        ..Default::default()
    }
    .build(&m)
    .expect("valid instance");
    (m, inst)
}
