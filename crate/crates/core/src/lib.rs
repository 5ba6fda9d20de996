//! Accelerated first-order methods for geodesically convex optimization on
//! Hadamard manifolds.
//!
//! The crate ships three manifolds (Euclidean space, the hyperboloid model of
//! hyperbolic space, SPD matrices with the affine-invariant metric), Fréchet
//! mean objectives with certified constants, the accelerated inexact proximal
//! scheme with its restarted and ball-boosted variants, baseline gradient
//! methods, and runtime diagnostics for the inequalities the analysis uses.

// Negated comparisons are how NaN arguments get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod geometry;
pub mod objectives;
pub mod solvers;

pub use error::{Error, Result};
pub use geometry::{GeodesicBall, Manifold, Point, Tangent};
pub use objectives::Objective;
