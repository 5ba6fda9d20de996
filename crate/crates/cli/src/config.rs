use std::fmt;
use std::path::{Path, PathBuf};

use riemacon::objectives::FrechetInstanceSpec;
use riemacon::{Manifold, Point};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Experiment description as written on disk. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    manifold: String,
    problem: ProblemConfig,
    solver: SolverConfig,
    budget: BudgetConfig,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    oracle: OracleConfig,
    #[serde(default)]
    output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub kind: ProblemKind,
    /// Explicit anchors as flat coordinate arrays; replaces the seeded draw.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<f64>>,
    /// Seed of the instance draw; the top-level seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor_seed: Option<u64>,
    #[serde(default = "default_num_anchors")]
    pub num_anchors: usize,
    #[serde(default = "default_spread")]
    pub spread: f64,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
}

fn default_num_anchors() -> usize {
    5
}

fn default_spread() -> f64 {
    0.8
}

fn default_radius() -> f64 {
    0.5
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Frechet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub kind: SolverKind,
    #[serde(default = "default_c_t")]
    pub c_t: f64,
    #[serde(default = "default_c_inner")]
    pub c_inner: f64,
    /// Distance bound `R >= d(x0, x*)` for the restarted and boosted solvers.
    #[serde(default, rename = "R", skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

fn default_c_t() -> f64 {
    8.0
}

fn default_c_inner() -> f64 {
    1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Rgd,
    ProjectedRgd,
    Riemacon,
    RiemaconSc,
    Boosted,
    Regularized,
    AltSubroutine,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Rgd => "rgd",
            SolverKind::ProjectedRgd => "projected-rgd",
            SolverKind::Riemacon => "riemacon",
            SolverKind::RiemaconSc => "riemacon-sc",
            SolverKind::Boosted => "boosted",
            SolverKind::Regularized => "regularized",
            SolverKind::AltSubroutine => "alt-subroutine",
        }
    }

    /// Solvers that run on the whole space rather than the feasible ball.
    pub fn unconstrained(self) -> bool {
        matches!(
            self,
            SolverKind::Rgd | SolverKind::Boosted | SolverKind::Regularized
        )
    }

    fn needs_iterations(self) -> bool {
        matches!(
            self,
            SolverKind::Rgd | SolverKind::ProjectedRgd | SolverKind::AltSubroutine
        )
    }

    fn needs_epsilon(self) -> bool {
        matches!(
            self,
            SolverKind::RiemaconSc | SolverKind::Boosted | SolverKind::Regularized
        )
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default = "default_oracle_iterations")]
    pub iterations: usize,
}

fn yes() -> bool {
    true
}

fn default_oracle_iterations() -> usize {
    100_000
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            enabled: true,
            iterations: default_oracle_iterations(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Output directory, relative to the output root; the config file stem
    /// when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default = "default_trace")]
    pub trace: PathBuf,
    #[serde(default = "default_summary")]
    pub summary: PathBuf,
}

fn default_trace() -> PathBuf {
    "trace.csv".into()
}

fn default_summary() -> PathBuf {
    "summary.json".into()
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: None,
            trace: default_trace(),
            summary: default_summary(),
        }
    }
}

/// Condition numbers to rerun the problem at; used by `compare`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub kappa: Vec<f64>,
}

/// A validated experiment.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub manifold: Manifold,
    pub problem: ProblemConfig,
    pub solver: SolverConfig,
    pub budget: BudgetConfig,
    pub seed: u64,
    pub oracle: OracleConfig,
    pub output: OutputConfig,
    pub sweep: Option<SweepConfig>,
    /// SHA-256 of the canonical JSON form, defaults filled in.
    pub hash: String,
}

/// A semantic error and the dotted key it is about.
struct Invalid {
    key: String,
    message: String,
}

fn invalid(key: impl Into<String>, message: impl Into<String>) -> Invalid {
    Invalid {
        key: key.into(),
        message: message.into(),
    }
}

fn positive(key: &str, v: f64) -> Result<(), Invalid> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(
            key,
            format!("{key} must be positive and finite, got {v}"),
        ))
    }
}

/// Line and column of the deepest key of `path` found in `text`, searching
/// each component after the previous one. Falls back to the closest parent.
fn locate(text: &str, path: &str) -> (usize, usize) {
    let mut offset = 0;
    for part in path.split('.') {
        let name = part.split('[').next().unwrap_or(part);
        let needle = format!("\"{name}\"");
        match text[offset..].find(&needle) {
            Some(i) => offset += i,
            None => break,
        }
    }
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

impl RawConfig {
    fn validate(self) -> Result<ExperimentConfig, Invalid> {
        let manifold: Manifold = self
            .manifold
            .parse()
            .map_err(|e| invalid("manifold", format!("manifold: {e}")))?;
        let p = &self.problem;
        positive("problem.radius", p.radius)?;
        if !(0.0..=1.0).contains(&p.spread) {
            return Err(invalid(
                "problem.spread",
                format!("problem.spread must lie in [0, 1], got {}", p.spread),
            ));
        }
        if let Some(k) = p.kappa {
            if !(k >= 1.0 && k.is_finite()) {
                return Err(invalid(
                    "problem.kappa",
                    format!("problem.kappa must be at least 1, got {k}"),
                ));
            }
        }
        if let Some(anchors) = &p.anchors {
            if anchors.is_empty() {
                return Err(invalid(
                    "problem.anchors",
                    "problem.anchors must not be empty",
                ));
            }
            for (i, a) in anchors.iter().enumerate() {
                manifold.point(a).map_err(|e| {
                    invalid(
                        format!("problem.anchors[{i}]"),
                        format!("problem.anchors[{i}]: {e}"),
                    )
                })?;
            }
        } else if p.num_anchors == 0 {
            return Err(invalid(
                "problem.num_anchors",
                "problem.num_anchors must be at least 1",
            ));
        }
        if let Some(c) = &p.center {
            manifold
                .point(c)
                .map_err(|e| invalid("problem.center", format!("problem.center: {e}")))?;
        }
        let n = p.anchors.as_ref().map_or(p.num_anchors, Vec::len);
        if let Some(w) = &p.weights {
            if w.len() != n {
                return Err(invalid(
                    "problem.weights",
                    format!("problem.weights has {} entries for {n} anchors", w.len()),
                ));
            }
            for (i, v) in w.iter().enumerate() {
                positive(&format!("problem.weights[{i}]"), *v)?;
            }
        }
        let s = &self.solver;
        positive("solver.c_t", s.c_t)?;
        positive("solver.c_inner", s.c_inner)?;
        if let Some(r) = s.r {
            positive("solver.R", r)?;
        }
        let b = self.budget;
        if b.iterations.is_none() && b.epsilon.is_none() {
            return Err(invalid("budget", "budget needs `iterations` or `epsilon`"));
        }
        if let Some(e) = b.epsilon {
            positive("budget.epsilon", e)?;
        }
        if s.kind.needs_iterations() && b.iterations.is_none() {
            return Err(invalid(
                "solver",
                format!("solver `{}` needs budget.iterations", s.kind),
            ));
        }
        if s.kind.needs_epsilon() && b.epsilon.is_none() {
            return Err(invalid(
                "solver",
                format!("solver `{}` needs budget.epsilon", s.kind),
            ));
        }
        if self.oracle.enabled && self.oracle.iterations == 0 {
            return Err(invalid(
                "oracle.iterations",
                "oracle.iterations must be at least 1",
            ));
        }
        if let Some(sw) = &self.sweep {
            if sw.kappa.is_empty() {
                return Err(invalid("sweep.kappa", "sweep.kappa must not be empty"));
            }
            for k in &sw.kappa {
                if !(*k >= 1.0 && k.is_finite()) {
                    return Err(invalid(
                        "sweep.kappa",
                        format!("sweep.kappa entries must be at least 1, got {k}"),
                    ));
                }
            }
        }
        let canonical = serde_json::to_vec(&self).expect("config serializes");
        let hash = hex::encode(Sha256::digest(&canonical));
        Ok(ExperimentConfig {
            manifold,
            problem: self.problem,
            solver: self.solver,
            budget: self.budget,
            seed: self.seed,
            oracle: self.oracle,
            output: self.output,
            sweep: self.sweep,
            hash,
        })
    }
}

/// Reading or validating a config failed.
#[derive(Debug)]
pub struct ConfigError {
    pub path: PathBuf,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path.display(), self.message)
    }
}

pub fn load(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let err = |message: String| ConfigError {
        path: path.to_path_buf(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    parse(&text).map_err(err)
}

/// Parses and validates config text. Messages carry the line and column of
/// the offending key.
pub fn parse(text: &str) -> Result<ExperimentConfig, String> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
    raw.validate().map_err(|e| {
        let (line, column) = locate(text, &e.key);
        format!("{} at line {line} column {column}", e.message)
    })
}

impl ExperimentConfig {
    /// Instance recipe, optionally at a different condition number.
    pub fn instance_spec(&self, kappa: Option<f64>) -> FrechetInstanceSpec {
        let p = &self.problem;
        let point = |c: &Vec<f64>| Point::from_slice(c);
        FrechetInstanceSpec {
            seed: p.anchor_seed.unwrap_or(self.seed),
            num_anchors: p.num_anchors,
            spread: p.spread,
            radius: p.radius,
            weights: p.weights.clone(),
            kappa: kappa.or(p.kappa),
            anchors: p.anchors.as_ref().map(|a| a.iter().map(point).collect()),
            center: p.center.as_ref().map(point),
        }
    }

    /// `(trace, summary)` paths under `root`.
    pub fn output_paths(&self, root: &Path, config_path: &Path) -> (PathBuf, PathBuf) {
        let dir = match &self.output.dir {
            Some(d) => root.join(d),
            None => root.join(config_path.file_stem().unwrap_or_else(|| "run".as_ref())),
        };
        (dir.join(&self.output.trace), dir.join(&self.output.summary))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "manifold": "euclidean:2",
        "problem": {"kind": "frechet"},
        "solver": {"kind": "rgd"},
        "budget": {"iterations": 10}
    }"#;

    #[test]
    fn minimal_config_fills_defaults() {
        let c = parse(MINIMAL).unwrap();
        assert_eq!(c.manifold, Manifold::Euclidean { dim: 2 });
        assert_eq!(c.problem.num_anchors, 5);
        assert_eq!(c.solver.c_t, 8.0);
        assert!(c.oracle.enabled);
        assert_eq!(c.hash.len(), 64);
    }

    #[test]
    fn hash_ignores_formatting_but_not_content() {
        let a = parse(MINIMAL).unwrap();
        let b = parse(&MINIMAL.replace('\n', " ")).unwrap();
        let c = parse(&MINIMAL.replace("10", "11")).unwrap();
        assert_eq!(a.hash, b.hash);
        assert_ne!(a.hash, c.hash);
    }

    #[test]
    fn errors_carry_a_line_number() {
        let unknown = parse(
            &MINIMAL
                .replace("\"seed\"", "x")
                .replace("\"budget\"", "\"budgett\""),
        )
        .unwrap_err();
        assert!(
            unknown.contains("unknown field `budgett`") && unknown.contains("line 5"),
            "{unknown}"
        );
        let kind = parse(&MINIMAL.replace("\"rgd\"", "\"newton\"")).unwrap_err();
        assert!(kind.contains("line 4"), "{kind}");
        let semantic = parse(&MINIMAL.replace("euclidean:2", "sphere:2")).unwrap_err();
        assert!(semantic.ends_with("at line 2 column 9"), "{semantic}");
        let nested =
            parse(&MINIMAL.replace("\"iterations\": 10", "\"iterations\": 10,\n \"epsilon\": 0"))
                .unwrap_err();
        assert!(
            nested.contains("budget.epsilon") && nested.ends_with("at line 6 column 2"),
            "{nested}"
        );
    }

    #[test]
    fn solver_budget_mismatch_is_rejected() {
        let e = parse(&MINIMAL.replace("\"rgd\"", "\"boosted\"")).unwrap_err();
        assert!(e.contains("budget.epsilon"), "{e}");
        let e =
            parse(&MINIMAL.replace("\"iterations\": 10", "\"iterations\": 10, \"epsilon\": -1"))
                .unwrap_err();
        assert!(e.contains("budget.epsilon"), "{e}");
    }

    #[test]
    fn anchors_are_checked_against_the_manifold() {
        let bad = MINIMAL.replace(
            r#"{"kind": "frechet"}"#,
            r#"{"kind": "frechet", "anchors": [[0, 0], [1]]}"#,
        );
        let e = parse(&bad).unwrap_err();
        assert!(
            e.contains("problem.anchors[1]") && e.ends_with("line 3 column 40"),
            "{e}"
        );
    }
}
