use super::LemmaReport;
use crate::solvers::RiemaconParams;

/// Evaluates both sides of the step-size inequalities
/// `(8λ/9)(ξA_{k−1} + a_k) >= a_k² >= (3λ/4)(ξA_{k−1} + ξa_k)` and
/// `ξλ/a_k < 5/6` for `k = 1..=k_max`.
pub fn schedule_check(lambda: f64, xi: f64, k_max: usize) -> LemmaReport {
    let p = RiemaconParams { xi, lambda };
    schedule_check_with(&p, k_max, |k| p.a(k))
}

/// Same check with a caller-supplied `a_k`; `A_k` is accumulated from it.
pub fn schedule_check_with(
    p: &RiemaconParams,
    k_max: usize,
    a: impl Fn(usize) -> f64,
) -> LemmaReport {
    let (xi, lambda) = (p.xi, p.lambda);
    let mut big_a = p.a0();
    let mut worst = f64::INFINITY;
    for k in 1..=k_max {
        let ak = a(k);
        let sq = ak * ak;
        let upper = 8.0 * lambda / 9.0 * (xi * big_a + ak) - sq;
        let lower = sq - 0.75 * lambda * (xi * big_a + xi * ak);
        let ratio = 5.0 / 6.0 - xi * lambda / ak;
        worst = worst.min(upper.min(lower) / sq).min(ratio);
        big_a += ak / xi;
    }
    LemmaReport {
        lemma: "schedule".into(),
        manifold: format!("xi={xi},lambda={lambda}"),
        trials: k_max,
        seed: 0,
        worst_slack: worst,
        tolerance: 0.0,
    }
}
