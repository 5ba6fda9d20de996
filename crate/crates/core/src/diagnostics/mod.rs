//! Runtime certification of the inequalities behind the solvers: Lyapunov
//! traces, step-size schedule checks, a battery of comparison inequalities
//! on random triangles, and oracle-checked proximal certificates.

mod certificates;
mod lemmas;
mod lyapunov;
mod schedule;

pub use certificates::{
    ball_oracle, certify_prox, prox_certificates, prox_oracle, CertificateRecord, OracleSolution,
};
pub use lemmas::{lemma_battery, LemmaId};
pub use lyapunov::{lyapunov_trace, LyapunovRecord};
pub use schedule::{schedule_check, schedule_check_with};

/// Worst slack of an inequality family over sampled instances. Negative
/// slack is a violation.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub lemma: String,
    pub manifold: String,
    pub trials: usize,
    pub seed: u64,
    pub worst_slack: f64,
    /// Violations smaller than this are attributed to roundoff.
    pub tolerance: f64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.worst_slack >= -self.tolerance
    }
}
