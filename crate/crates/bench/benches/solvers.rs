use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use riemacon::geometry::{random_point, random_tangent, zeta};
use riemacon::objectives::Objective;
use riemacon::solvers::{
    prox_solve, rgd, riemacon, riemacon_sc, RiemaconConfig, RiemaconParams, RunOptions, Stopping,
};
use riemacon_bench::{frechet, manifold, MANIFOLDS};
use std::hint::black_box;

fn geometry(c: &mut Criterion) {
    let mut g = c.benchmark_group("geometry");
    for id in MANIFOLDS {
        let m = manifold(id);
        let x = random_point(&m, 1, 0.5);
        let y = random_point(&m, 2, 0.5);
        let v = random_tangent(&m, &x, 3);
        g.bench_with_input(BenchmarkId::new("exp", id), &m, |b, m| {
            b.iter(|| m.exp(&x, black_box(&v)))
        });
        g.bench_with_input(BenchmarkId::new("log", id), &m, |b, m| {
            b.iter(|| m.log(&x, black_box(&y)))
        });
        g.bench_with_input(BenchmarkId::new("transport", id), &m, |b, m| {
            b.iter(|| m.transport(&x, &y, black_box(&v)))
        });
    }
    g.finish();
}

fn subproblem(c: &mut Criterion) {
    let mut g = c.benchmark_group("prox");
    g.sample_size(20);
    for id in MANIFOLDS {
        let (m, inst) = frechet(id, 0, None);
        let f = &inst.objective;
        let z = zeta(2.0 * inst.ball.diameter(), m.curvature().kmin).unwrap();
        let lambda = RiemaconParams::new(z, f.smoothness()).unwrap().lambda;
        g.bench_function(id, |b| {
            b.iter(|| {
                prox_solve(
                    f,
                    &inst.ball,
                    &inst.x0,
                    lambda,
                    1e-6,
                    &RiemaconConfig::default().budget,
                )
            })
        });
    }
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.sample_size(10);
    let config = RiemaconConfig::default();
    let opts = RunOptions::default();
    for id in ["hyperbolic:2:1", "spd:3"] {
        let (_, inst) = frechet(id, 0, Some(100.0));
        let f = &inst.objective;
        g.bench_function(BenchmarkId::new("rgd_2000", id), |b| {
            b.iter(|| rgd(f, &inst.x0, 2000, &opts))
        });
        g.bench_function(BenchmarkId::new("riemacon_50", id), |b| {
            b.iter(|| {
                riemacon(
                    f,
                    &inst.ball,
                    &inst.x0,
                    Stopping::Iterations(50),
                    &config,
                    &opts,
                )
            })
        });
        g.bench_function(BenchmarkId::new("riemacon_sc_1e-6", id), |b| {
            b.iter(|| riemacon_sc(f, &inst.ball, &inst.x0, 1e-6, None, &config, &opts))
        });
    }
    g.finish();
}

criterion_group!(benches, geometry, subproblem, solvers);
criterion_main!(benches);
