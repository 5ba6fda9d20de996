use std::path::{Path, PathBuf};

use crate::config::{self, ExperimentConfig};
use crate::output;
use crate::run::{execute, Outcome, RunError};

pub const HEADER: [&str; 5] = ["solver", "config", "kappa", "calls_to_epsilon", "slope"];

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub solver: String,
    pub config: String,
    pub kappa: Vec<Option<f64>>,
    pub calls: Vec<Option<u64>>,
    pub slope: Option<f64>,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn check_compatible(configs: &[(PathBuf, ExperimentConfig)]) -> Result<f64, String> {
    let (p0, first) = &configs[0];
    let epsilon = first
        .budget
        .epsilon
        .ok_or_else(|| format!("{}: compare needs budget.epsilon", p0.display()))?;
    let spec = first.instance_spec(None);
    for (p, c) in &configs[1..] {
        let mismatch =
            |what: &str| format!("{} and {} differ in {what}", p0.display(), p.display());
        if c.manifold != first.manifold {
            return Err(mismatch("manifold"));
        }
        if c.instance_spec(None) != spec {
            return Err(mismatch("problem"));
        }
        if c.budget.epsilon != Some(epsilon) {
            return Err(mismatch("budget.epsilon"));
        }
        if c.sweep != first.sweep {
            return Err(mismatch("sweep"));
        }
    }
    Ok(epsilon)
}

fn compare_one(path: &Path, cfg: &ExperimentConfig, epsilon: f64) -> Result<Row, RunError> {
    let kappas: Vec<Option<f64>> = match &cfg.sweep {
        Some(s) => s.kappa.iter().copied().map(Some).collect(),
        None => vec![cfg.problem.kappa],
    };
    let mut calls = Vec::with_capacity(kappas.len());
    for k in &kappas {
        calls.push(execute(cfg, *k, true)?.calls_to(epsilon));
    }
    let slope = if cfg.sweep.is_some() {
        let pts: Option<Vec<(f64, f64)>> = kappas
            .iter()
            .zip(&calls)
            .map(|(k, c)| Some((k.unwrap_or(1.0), (*c)? as f64)))
            .collect();
        pts.and_then(|p| loglog_slope(&p))
    } else {
        None
    };
    Ok(Row {
        solver: cfg.solver.kind.to_string(),
        config: path.display().to_string(),
        kappa: kappas,
        calls,
        slope,
    })
}

pub fn to_csv(rows: &[Row]) -> Vec<u8> {
    let join = |v: Vec<String>| v.join(";");
    let opt = |v: Option<String>| v.unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("writing to memory");
    for r in rows {
        w.write_record([
            r.solver.clone(),
            r.config.clone(),
            join(
                r.kappa
                    .iter()
                    .map(|k| opt(k.map(|x| x.to_string())))
                    .collect(),
            ),
            join(
                r.calls
                    .iter()
                    .map(|c| opt(c.map(|x| x.to_string())))
                    .collect(),
            ),
            opt(r.slope.map(|s| format!("{s:.4}"))),
        ])
        .expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}

/// `compare` subcommand body. Configs run in parallel, one thread each.
pub fn cmd_compare(paths: &[PathBuf], out: &Path) -> Outcome {
    let mut configs = Vec::with_capacity(paths.len());
    for p in paths {
        match config::load(p) {
            Ok(c) => configs.push((p.clone(), c)),
            Err(e) => return Outcome::Invalid(e.to_string()),
        }
    }
    let epsilon = match check_compatible(&configs) {
        Ok(e) => e,
        Err(e) => return Outcome::Invalid(e),
    };
    let results: Vec<Result<Row, RunError>> = std::thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|(p, c)| s.spawn(move || compare_one(p, c, epsilon)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("compare worker panicked"))
            .collect()
    });
    let mut rows = Vec::with_capacity(results.len());
    for (r, (p, _)) in results.into_iter().zip(&configs) {
        match r {
            Ok(row) => rows.push(row),
            Err(RunError::Invalid(m)) => return Outcome::Invalid(format!("{}: {m}", p.display())),
            Err(RunError::Numerical(a)) => {
                return Outcome::Numerical(format!("{}: {}", p.display(), a.message))
            }
        }
    }
    let bytes = to_csv(&rows);
    if let Err(e) = output::write_atomic(out, &bytes) {
        return Outcome::Invalid(e);
    }
    print!("{}", String::from_utf8_lossy(&bytes));
    Outcome::Ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&k: &f64| (k, 3.0 * k.sqrt()))
            .collect();
        assert!((loglog_slope(&pts).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(loglog_slope(&pts[..1]), None);
    }

    #[test]
    fn csv_rows_join_sweeps() {
        let row = Row {
            solver: "rgd".into(),
            config: "a.json".into(),
            kappa: vec![Some(100.0), Some(1000.0)],
            calls: vec![Some(40), None],
            slope: None,
        };
        let text = String::from_utf8(to_csv(&[row])).unwrap();
        assert_eq!(
            text,
            "solver,config,kappa,calls_to_epsilon,slope\nrgd,a.json,100;1000,40;,\n"
        );
    }
}
