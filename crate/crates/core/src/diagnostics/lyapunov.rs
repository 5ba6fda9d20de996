use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::objectives::Objective;
use crate::solvers::{lyapunov_value, RiemaconOutput};

#[derive(Clone, Debug, PartialEq)]
pub struct LyapunovRecord {
    pub k: usize,
    pub psi: f64,
    pub delta: f64,
    /// `ψ_{k−1} / ((1 − Δ_k) ψ_k)`.
    pub ratio: f64,
    pub pass: bool,
}

/// Per-iteration check of `(1 − Δ_k) ψ_k <= ψ_{k−1}` on a run with captured
/// states, against a minimizer `x_star` of `f` over the feasible ball.
pub fn lyapunov_trace(
    f: &dyn Objective,
    run: &RiemaconOutput,
    x_star: &Point,
) -> Result<Vec<LyapunovRecord>> {
    if run.states.len() != run.trace.len() {
        return Err(Error::invalid(
            "lyapunov trace needs a run with state capture enabled",
        ));
    }
    let psi: Vec<f64> = run
        .states
        .iter()
        .map(|s| lyapunov_value(f, &run.params, s, x_star))
        .collect();
    Ok(run.states[1..]
        .iter()
        .zip(psi.windows(2))
        .map(|(s, w)| {
            let delta = run.params.delta(s.k);
            let lhs = (1.0 - delta) * w[1];
            let ratio = if lhs > 0.0 {
                w[0] / lhs
            } else if w[0] >= 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
            LyapunovRecord {
                k: s.k,
                psi: w[1],
                delta,
                ratio,
                pass: ratio >= 1.0 - 1e-9,
            }
        })
        .collect())
}
