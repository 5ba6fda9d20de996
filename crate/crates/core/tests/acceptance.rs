//! End-to-end acceptance checks. Each test prints one PASS/FAIL line and
//! fails when its criterion does not hold.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use riemacon::diagnostics::{
    ball_oracle, certify_prox, lemma_battery, lyapunov_trace, schedule_check, LemmaId,
};
use riemacon::geometry::{
    rng_from_seed, sample_in_ball, sample_unit_tangent, zeta, GeodesicBall, Manifold, Point,
};
use riemacon::objectives::{
    frechet_objective, grad_check, pullback, ConstantObjective, FrechetInstanceSpec,
    FrechetMeanProblem, FrechetObjective, Objective, ProxObjective, QuadraticObjective,
};
use riemacon::solvers::{
    alt_linearized_step, alt_subroutine, boosted_riemacon, projected_rgd, rgd, riemacon,
    riemacon_sc, RiemaconConfig, RunOptions, Stopping,
};

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    // Written to the raw handle so the line shows up without --nocapture.
    let mut out = std::io::stdout().lock();
    writeln!(out, "acceptance {id:>2} {status} {name}: {detail}").unwrap();
    out.flush().unwrap();
    assert!(pass, "acceptance {id} failed: {detail}");
}

fn manifold(id: &str) -> Manifold {
    id.parse().unwrap()
}

fn instance(m: &Manifold, seed: u64, radius: f64) -> riemacon::objectives::FrechetInstance {
    FrechetInstanceSpec {
        seed,
        radius,
        ..Default::default()
    }
    .build(m)
    .unwrap()
}

/// Least-squares slope of `ln y` against `ln x`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

const LEMMA_MANIFOLDS: [&str; 6] = [
    "euclidean:3",
    "hyperbolic:2:1",
    "hyperbolic:2:4",
    "hyperbolic:4:1",
    "hyperbolic:4:4",
    "spd:3",
];

#[test]
fn criterion_01_lemma_battery() {
    let lemmas = [
        LemmaId::Cosine,
        LemmaId::MovingQuadratics,
        LemmaId::MovingHyperplanes,
        LemmaId::HessianBounds,
    ];
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for (i, id) in LEMMA_MANIFOLDS.iter().enumerate() {
        let m = manifold(id);
        for lemma in lemmas {
            let r = lemma_battery(&m, lemma, 10_000, 100 + i as u64);
            worst = worst.min(r.worst_slack);
            if r.worst_slack < -1e-8 {
                failures.push(format!("{lemma} on {id}: {:.3e}", r.worst_slack));
            }
        }
    }
    report(
        1,
        "lemma battery",
        failures.is_empty(),
        &format!("worst normalized slack {worst:.3e} (tolerance -1e-8) {failures:?}"),
    );
}

#[test]
fn criterion_02_schedule() {
    let mut worst = f64::INFINITY;
    for xi in [1.0, 5.0, 29.0, 997.0] {
        for lambda in [1e-3, 1.0, 10.0] {
            worst = worst.min(schedule_check(lambda, xi, 100_000).worst_slack);
        }
    }
    report(
        2,
        "schedule",
        worst >= 0.0,
        &format!("worst slack {worst:.3e} over k <= 1e5"),
    );
}

#[test]
fn criterion_03_lyapunov() {
    // Thirty iterations keep ψ well above the roundoff floor of its
    // evaluation; see the unit tests of the Lyapunov module.
    let iters = 30;
    let mut runs = Vec::new();
    for seed in 0..20u64 {
        let id = [
            "hyperbolic:2:1",
            "hyperbolic:4:4",
            "hyperbolic:3:1",
            "hyperbolic:2:4",
        ][seed as usize % 4];
        runs.push((manifold(id), seed, 0.5));
    }
    for seed in 0..10u64 {
        runs.push((manifold("spd:3"), 100 + seed, 0.5));
    }
    let mut checked = 0;
    let mut worst_ratio = f64::INFINITY;
    let mut failures = Vec::new();
    for (m, seed, radius) in &runs {
        let inst = instance(m, *seed, *radius);
        let f = &inst.objective;
        let oracle = ball_oracle(f, &inst.ball, &inst.ball.center, 100_000).unwrap();
        let opts = RunOptions {
            reference: Some(oracle.point.clone()),
            capture_states: true,
        };
        let run = riemacon(
            f,
            &inst.ball,
            &inst.x0,
            Stopping::Iterations(iters),
            &RiemaconConfig::default(),
            &opts,
        )
        .unwrap();
        let records = lyapunov_trace(f, &run, &oracle.point).unwrap();
        checked += records.len();
        for r in &records {
            worst_ratio = worst_ratio.min(r.ratio);
            if !r.pass {
                failures.push(format!("{m} seed {seed} k {}: ratio {:.12}", r.k, r.ratio));
            }
        }
        if !oracle.converged {
            failures.push(format!("{m} seed {seed}: oracle not converged"));
        }
    }
    report(
        3,
        "lyapunov decrease",
        failures.is_empty(),
        &format!(
            "{} runs, {checked} iterations, worst psi_(k-1)/((1-Delta_k) psi_k) = {worst_ratio:.6} {failures:?}",
            runs.len()
        ),
    );
}

#[test]
fn criterion_04_prox_certificates() {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut count = 0;
    let cases = [
        ("hyperbolic:2:1", 0.5),
        ("hyperbolic:4:4", 0.5),
        ("hyperbolic:2:1", 1.5),
        ("hyperbolic:3:1", 1.0),
    ];
    for (seed, (id, radius)) in cases.iter().enumerate() {
        let m = manifold(id);
        let inst = instance(&m, 40 + seed as u64, *radius);
        let f = &inst.objective;
        let x_star = ball_oracle(f, &inst.ball, &inst.ball.center, 100_000).unwrap();
        let opts = RunOptions {
            reference: None,
            capture_states: true,
        };
        let run = riemacon(
            f,
            &inst.ball,
            &inst.x0,
            Stopping::Iterations(25),
            &RiemaconConfig::default(),
            &opts,
        )
        .unwrap();
        for k in [0usize, 1, 5, 12, 25] {
            let s = &run.states[k];
            let c = certify_prox(
                f,
                &inst.ball,
                k,
                &s.x,
                run.params.lambda,
                run.params.delta(k),
                &s.y,
                Some(&x_star.point),
                100_000,
            )
            .unwrap();
            count += 1;
            if c.bound > 0.0 {
                worst = worst.max(c.gap / c.bound);
            }
            if !c.passed() {
                failures.push(format!("{id} r={radius} k={k}: {c:?}"));
            }
        }
    }
    report(
        4,
        "prox certificates",
        failures.is_empty() && count == 20,
        &format!("{count} subproblems, worst gap/bound {worst:.3e} {failures:?}"),
    );
}

#[test]
fn criterion_05_rate_scaling() {
    let m = manifold("hyperbolic:2:1");
    let eps = 1e-6;
    let kappas = [1e2, 1e3, 1e4];
    let seeds = 0..3u64;
    let mut rgd_pts = Vec::new();
    let mut sc_pts = Vec::new();
    let mut fewer = true;
    let mut rows = Vec::new();
    for &kappa in &kappas {
        for seed in seeds.clone() {
            let inst = FrechetInstanceSpec {
                seed,
                radius: 0.3,
                spread: 0.5,
                kappa: Some(kappa),
                ..Default::default()
            }
            .build(&m)
            .unwrap();
            let f = &inst.objective;
            let oracle = ball_oracle(f, &inst.ball, &inst.ball.center, 2_000_000).unwrap();
            assert!(
                oracle.converged
                    && m.distance(&oracle.point, &inst.ball.center) < 0.5 * inst.ball.radius
            );
            let target = oracle.value + eps;
            let steps = (20.0 * kappa) as usize;
            let g = rgd(f, &inst.x0, steps, &RunOptions::default()).unwrap();
            let sc = riemacon_sc(
                f,
                &inst.ball,
                &inst.x0,
                eps,
                None,
                &RiemaconConfig::default(),
                &RunOptions::default(),
            )
            .unwrap();
            let (cg, cs) = (
                g.trace.calls_to_reach(target),
                sc.trace.calls_to_reach(target),
            );
            let (cg, cs) = (
                cg.expect("rgd reaches the target"),
                cs.expect("riemacon-sc reaches the target"),
            );
            rgd_pts.push((kappa, cg as f64));
            sc_pts.push((kappa, cs as f64));
            if kappa == 1e4 && cs >= cg {
                fewer = false;
            }
            rows.push(format!("k={kappa:e} s={seed}: rgd {cg} sc {cs}"));
        }
    }
    let (sr, ss) = (loglog_slope(&rgd_pts), loglog_slope(&sc_pts));
    let pass = (sr - 1.0).abs() <= 0.1 && (ss - 0.5).abs() <= 0.1 && fewer;
    report(
        5,
        "rate scaling",
        pass,
        &format!(
            "rgd slope {sr:.3} (1.0 +- 0.1), riemacon-sc slope {ss:.3} (0.5 +- 0.1), fewer calls at 1e4: {fewer}; {}",
            rows.join(", ")
        ),
    );
}

#[test]
fn criterion_06_euclidean_reduction() {
    // Log-spaced spectrum with equal initial error per eigendirection: the
    // unresolved part of the gap then tracks the k⁻² envelope.
    let n = 16;
    let m = Manifold::Euclidean { dim: n };
    let eig: Vec<f64> = (0..n)
        .map(|i| 10f64.powf(-10.0 * i as f64 / (n - 1) as f64))
        .collect();
    let a = DMatrix::from_diagonal(&DVector::from_vec(eig));
    let xs = DVector::from_element(n, 0.1);
    let b = &a * &xs;
    let dom = GeodesicBall::new(m.origin(), 20.0).unwrap();
    let f = QuadraticObjective::new(m.clone(), a, b, dom).unwrap();
    let ball = GeodesicBall::new(m.origin(), 4.0).unwrap();
    let f_star = f.value(&Point::new(xs));
    let x0 = Point::new(DVector::from_element(n, 0.5));
    let out = riemacon(
        &f,
        &ball,
        &x0,
        Stopping::Iterations(2048),
        &RiemaconConfig::default(),
        &RunOptions::default(),
    )
    .unwrap();
    assert_eq!(out.params.xi, 1.0);
    // A_k grows quadratically once k exceeds the 64ξ offset.
    let lo = 64;
    let pts: Vec<(f64, f64)> = (lo..=2048)
        .map(|k| (k as f64, out.trace.records[k].f_value - f_star))
        .collect();
    let slope = loglog_slope(&pts);
    report(
        6,
        "euclidean reduction",
        slope <= -1.9,
        &format!("gap slope {slope:.3} over k in [{lo}, 2048]"),
    );
}

#[test]
fn criterion_07_projected_rgd_contraction() {
    let cases = [
        ("euclidean:2", 0.5),
        ("hyperbolic:2:1", 0.4),
        ("hyperbolic:4:1", 0.4),
        ("hyperbolic:2:4", 0.2),
        ("spd:3", 0.4),
    ];
    let mut failures = Vec::new();
    let mut details = Vec::new();
    let mut instances = 0;
    let mut corrected_holds = true;
    for (i, (id, radius)) in cases.iter().enumerate() {
        let m = manifold(id);
        for seed in 0..2u64 {
            let inst = instance(&m, 70 + 2 * i as u64 + seed, *radius);
            let f = &inst.objective;
            let z = zeta(inst.ball.diameter(), m.curvature().kmin).unwrap();
            assert!(z < 2.0);
            let oracle = ball_oracle(f, &f.domain().clone(), &inst.ball.center, 100_000).unwrap();
            assert!(
                inst.ball.contains(&m, &oracle.point),
                "minimizer must be interior"
            );
            let factor = 1.0 - 2.0 * f.strong_convexity() * (2.0 - z) / f.smoothness();
            let corrected = 1.0 - f.strong_convexity() * (2.0 - z) / f.smoothness();
            let out = projected_rgd(
                f,
                &inst.ball,
                &inst.x0,
                100,
                &RunOptions::with_reference(oracle.point.clone()),
            )
            .unwrap();
            let d: Vec<f64> = out
                .trace
                .records
                .iter()
                .map(|r| r.dist_to_ref.unwrap())
                .collect();
            let mut worst = 0.0f64;
            for w in d.windows(2) {
                // Ratios are meaningful only above the oracle's accuracy.
                if w[0] > 1e-6 {
                    worst = worst.max((w[1] / w[0]).powi(2));
                }
            }
            instances += 1;
            details.push(format!("{id}#{seed} ratio {worst:.4} vs {factor:.4}"));
            if worst > factor + 1e-6 {
                failures.push(format!("{id}#{seed}"));
            }
            corrected_holds &= worst <= corrected + 1e-6;
        }
    }
    report(
        7,
        "projected rgd contraction",
        failures.is_empty(),
        &format!(
            "{instances} instances, {} violations; factor 1 - mu(2-zeta)/L holds on all: {corrected_holds}; {}",
            failures.len(),
            details.join(", ")
        ),
    );
}

#[test]
fn criterion_08_unconstrained_rgd() {
    let ids = [
        "euclidean:4",
        "hyperbolic:2:1",
        "hyperbolic:4:4",
        "spd:3",
        "hyperbolic:3:1",
    ];
    let mut worst = 0.0f64;
    let mut count = 0;
    for (i, id) in ids.iter().enumerate() {
        let m = manifold(id);
        for seed in 0..2u64 {
            let inst = instance(&m, 200 + 2 * i as u64 + seed, 0.5);
            let f = &inst.objective;
            let oracle = ball_oracle(f, &f.domain().clone(), &inst.ball.center, 100_000).unwrap();
            let d0 = m.distance(&inst.x0, &oracle.point);
            let out = rgd(f, &inst.x0, 200, &RunOptions::default()).unwrap();
            for r in out.trace.records.iter().skip(1) {
                let bound = 2.0 * f.smoothness() * d0 * d0 / r.k as f64;
                let gap = r.f_value - oracle.value;
                // Below the oracle's roundoff the ratio carries no information.
                if gap > 1e-13 {
                    worst = worst.max(gap / bound);
                }
            }
            count += 1;
        }
    }
    report(
        8,
        "unconstrained rgd",
        worst <= 1.0,
        &format!("{count} instances, worst gap/bound {worst:.3e}"),
    );
}

#[test]
fn criterion_09_boosted() {
    let eps = 1e-6;
    let mut failures = Vec::new();
    let mut worst_ratio = 0.0f64;
    let mut worst_gap = f64::NEG_INFINITY;
    for seed in 0..10u64 {
        let id = if seed % 2 == 0 {
            "hyperbolic:2:1"
        } else {
            "hyperbolic:3:1"
        };
        let m = manifold(id);
        let inst = instance(&m, 300 + seed, 0.4);
        let f = &inst.objective;
        let oracle = ball_oracle(f, &f.domain().clone(), &inst.ball.center, 100_000).unwrap();
        let r = 1.2 * m.distance(&inst.x0, &oracle.point);
        let out = boosted_riemacon(
            f,
            &inst.x0,
            r,
            eps,
            &RiemaconConfig::default(),
            &RunOptions::default(),
        )
        .unwrap();
        let far = out
            .outer_points
            .iter()
            .map(|p| m.distance(p, &oracle.point))
            .fold(0.0, f64::max);
        let gap = f.value(&out.point) - oracle.value;
        worst_ratio = worst_ratio.max(far / (2.0 * r));
        worst_gap = worst_gap.max(gap);
        if far > 2.0 * r || gap > eps {
            failures.push(format!(
                "{id} seed {seed}: d {far:.4} 2R {:.4} gap {gap:.3e}",
                2.0 * r
            ));
        }
    }
    report(
        9,
        "boosted iterate bound",
        failures.is_empty(),
        &format!(
            "10 runs, worst d/2R {worst_ratio:.3}, worst final gap {worst_gap:.3e} {failures:?}"
        ),
    );
}

#[test]
fn criterion_10_alternative_subroutine() {
    let mut worst_ratio = 0.0f64;
    let mut worst_opt = f64::NEG_INFINITY;
    let mut failures = Vec::new();
    let cases = [
        ("euclidean:2", 0.5, None),
        ("euclidean:3", 0.3, Some(50.0)),
        ("hyperbolic:2:1", 0.5, None),
        ("hyperbolic:3:1", 0.4, Some(50.0)),
        ("hyperbolic:2:4", 0.3, None),
    ];
    for (i, (id, radius, kappa)) in cases.iter().enumerate() {
        let m = manifold(id);
        // Anchors beyond the ball put the constrained minimizer on the
        // boundary, so the linearized step is exercised there as well.
        let inst = FrechetInstanceSpec {
            seed: 400 + i as u64,
            radius: *radius,
            spread: 1.0,
            kappa: *kappa,
            ..Default::default()
        }
        .build(&m)
        .unwrap();
        let f = &inst.objective;
        let ball = GeodesicBall::new(inst.ball.center.clone(), 0.5 * radius).unwrap();
        let x0 = ball.project(&m, &inst.x0).unwrap();
        let oracle = ball_oracle(f, &ball, &ball.center, 1_000_000).unwrap();
        let rate = 1.0 - f.strong_convexity() / (2.0 * f.smoothness());
        let out = alt_subroutine(f, &ball, &x0, 60, &RunOptions::default()).unwrap();
        let gaps: Vec<f64> = out
            .trace
            .records
            .iter()
            .map(|r| r.f_value - oracle.value)
            .collect();
        for w in gaps.windows(2) {
            if w[0] > 1e-10 {
                let ratio = w[1] / w[0];
                worst_ratio = worst_ratio.max(ratio / rate);
                if w[1] > rate * w[0] * (1.0 + 1e-9) {
                    failures.push(format!("{id}: ratio {ratio:.6} > {rate:.6}"));
                }
            }
        }
        // Step optimality against dense sampling of the feasible set.
        let mut rng = rng_from_seed(500 + i as u64);
        let l = f.smoothness();
        for _ in 0..5 {
            let x = sample_in_ball(&m, &ball.center, ball.radius, &mut rng);
            let g = f.gradient(&x);
            let model = |y: &Point| {
                let v = m.log(&x, y);
                m.inner(&x, &g, &v).unwrap() + 0.5 * l * m.norm(&v).powi(2)
            };
            let step = alt_linearized_step(f, &ball, &x).unwrap();
            let best = (0..1000)
                .map(|j| {
                    // Half the samples on the boundary, where the step usually lands.
                    let u = sample_unit_tangent(&m, &ball.center, &mut rng);
                    let r = if j % 2 == 0 {
                        ball.radius
                    } else {
                        ball.radius * rng.random::<f64>()
                    };
                    model(&m.exp(&ball.center, &u.scale(r)).unwrap())
                })
                .fold(f64::INFINITY, f64::min);
            let slack = best - model(&step);
            worst_opt = worst_opt.max(-slack);
            if model(&step) > best + 1e-9 {
                failures.push(format!(
                    "{id}: step model exceeds sampled minimum by {:.3e}",
                    -slack
                ));
            }
        }
    }
    report(
        10,
        "alternative subroutine",
        failures.is_empty(),
        &format!(
            "worst gap ratio / (1 - mu/2L) = {worst_ratio:.6}, worst step excess over sampling {worst_opt:.3e} {failures:?}"
        ),
    );
}

fn fd_check_pullback(h: &dyn Objective, center: &Point, radius: f64, seed: u64) -> f64 {
    let m = h.manifold();
    let pb = pullback(h, center.clone(), radius);
    let mut rng = rng_from_seed(seed);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let v = riemacon::geometry::sample_tangent(
            m,
            center,
            &mut rng,
            0.5 * radius / (m.dim() as f64).sqrt(),
        );
        let v = riemacon::geometry::tangent_ball_project(m, &v, 0.9 * radius);
        let u = sample_unit_tangent(m, center, &mut rng);
        let t = 1e-5;
        let fd = (pb.value(&v.axpy(t, &u).unwrap()).unwrap()
            - pb.value(&v.axpy(-t, &u).unwrap()).unwrap())
            / (2.0 * t);
        let an = m.inner(center, &pb.gradient(&v).unwrap(), &u).unwrap();
        worst = worst.max((fd - an).abs() / an.abs().max(1.0));
    }
    worst
}

#[test]
fn criterion_11_gradient_checks() {
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut record = |name: String, err: f64| {
        worst = worst.max(err);
        rows.push(format!("{name} {err:.1e}"));
    };
    for (i, id) in ["euclidean:3", "hyperbolic:2:1", "hyperbolic:4:4", "spd:3"]
        .iter()
        .enumerate()
    {
        let m = manifold(id);
        let inst = instance(&m, 600 + i as u64, 0.5);
        let f = &inst.objective;
        let center = inst.ball.center.clone();
        let mut rng = rng_from_seed(700 + i as u64);
        let probes: Vec<Point> = (0..100)
            .map(|_| sample_in_ball(&m, &center, 1.5, &mut rng))
            .collect();
        let each = |obj: &dyn Objective| {
            probes
                .iter()
                .enumerate()
                .map(|(j, x)| grad_check(obj, x, 10, j as u64))
                .fold(0.0, f64::max)
        };
        record(format!("frechet/{id}"), each(f));
        if !matches!(m, Manifold::Spd { .. }) {
            let anchors = f.problem().anchors.clone();
            let normal = sample_unit_tangent(&m, &center, &mut rng);
            let cond = FrechetObjective::with_condition_number(
                &m,
                FrechetMeanProblem::uniform(anchors),
                center.clone(),
                &normal,
                f.domain().clone(),
                1e3,
            )
            .unwrap();
            record(format!("frechet+plane/{id}"), each(&cond));
        }
        let z = zeta(2.0 * inst.ball.diameter(), m.curvature().kmin).unwrap();
        let prox = ProxObjective::new(f, inst.x0.clone(), 0.7, z).unwrap();
        record(format!("prox/{id}"), each(&prox));
        record(
            format!("pullback/{id}"),
            fd_check_pullback(&prox, &center, inst.ball.radius, 800 + i as u64),
        );
        record(
            format!("pullback-frechet/{id}"),
            fd_check_pullback(f, &center, inst.ball.radius, 900 + i as u64),
        );
        let constant = ConstantObjective::new(m.clone(), 1.5, f.domain().clone());
        record(format!("constant/{id}"), each(&constant));
        if let Manifold::Euclidean { dim } = m {
            let mut q = DMatrix::from_fn(dim, dim, |r, c| ((r * 3 + c * 5) % 7) as f64 / 7.0);
            q = &q * q.transpose() + DMatrix::identity(dim, dim);
            let lin = DVector::from_fn(dim, |r, _| r as f64 - 1.0);
            let quad = QuadraticObjective::new(m.clone(), q, lin, f.domain().clone()).unwrap();
            record(format!("quadratic/{id}"), each(&quad));
        }
    }
    let base = frechet_objective(
        &manifold("hyperbolic:3:1"),
        FrechetMeanProblem::uniform(vec![manifold("hyperbolic:3:1").origin()]),
        GeodesicBall::new(manifold("hyperbolic:3:1").origin(), 2.0).unwrap(),
    )
    .unwrap();
    let x = riemacon::geometry::random_point(base.manifold(), 3, 0.4);
    record(
        "frechet/single-anchor".into(),
        grad_check(&base, &x, 1000, 4),
    );
    report(
        11,
        "gradient checks",
        worst <= 1e-5,
        &format!(
            "1e3 probes per objective, worst relative error {worst:.2e}; {}",
            rows.join(", ")
        ),
    );
}

#[test]
fn criterion_12_determinism() {
    let run = |solver: &str| -> Vec<u8> {
        let m = manifold("hyperbolic:3:1");
        let inst = instance(&m, 1234, 0.5);
        let f = &inst.objective;
        let opts = RunOptions::default();
        let cfg = RiemaconConfig::default();
        let trace = match solver {
            "riemacon" => {
                riemacon(
                    f,
                    &inst.ball,
                    &inst.x0,
                    Stopping::Iterations(40),
                    &cfg,
                    &opts,
                )
                .unwrap()
                .trace
            }
            "riemacon-sc" => {
                riemacon_sc(f, &inst.ball, &inst.x0, 1e-8, None, &cfg, &opts)
                    .unwrap()
                    .trace
            }
            "rgd" => rgd(f, &inst.x0, 100, &opts).unwrap().trace,
            _ => unreachable!(),
        };
        trace.to_csv_bytes()
    };
    let mut same = true;
    for solver in ["riemacon", "riemacon-sc", "rgd"] {
        let (a, b) = (run(solver), run(solver));
        same &= a == b && !a.is_empty();
    }
    report(
        12,
        "determinism",
        same,
        "repeated seeded runs produce byte-identical csv",
    );
}
