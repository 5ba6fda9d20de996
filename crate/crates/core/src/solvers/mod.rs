//! Baseline gradient methods, the accelerated proximal scheme and its
//! restarted and boosted wrappers.

mod alt;
mod boosted;
mod prox;
mod restart;
mod rgd;
mod riemacon;
mod trace;

pub use alt::{alt_linearized_step, alt_subroutine};
pub use boosted::{
    ball_count, boosted_riemacon, boosted_shortcut, compute_ball_diameter, regularized_solve,
    simple_ball_diameter, BoostedOutput,
};
pub use prox::{euclidean_agd, prox_solve, warm_start, ProxSolution, SubroutineBudget, WarmStart};
pub use restart::{riemacon_sc, RestartOutput};
pub use rgd::{projected_rgd, rgd};
pub use riemacon::{
    lyapunov_value, riemacon, RiemaconConfig, RiemaconOutput, RiemaconParams, RiemaconState,
    Stopping,
};
pub use trace::{RunOptions, SolverOutput, SolverTrace, TraceRecord, CSV_HEADER};

use crate::error::Error;

pub(crate) fn numerical_abort(message: String, trace: SolverTrace) -> Error {
    Error::Numerical {
        message,
        trace: Box::new(trace),
    }
}
