//! Experiment runner for the riemacon solvers.
//!
//! Exit codes: 0 success, 1 check violation, 2 invalid config or arguments,
//! 3 numerical abort.

mod check;
mod compare;
mod config;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use run::Outcome;

#[derive(Parser)]
#[command(
    name = "riemacon",
    version,
    about = "Run and compare Riemannian accelerated solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its trace CSV and summary JSON.
    Run { config: PathBuf },
    /// Run several solvers on the same problem and tabulate gradient calls to epsilon.
    Compare {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        /// Comparison CSV path, relative to the output root.
        #[arg(long, default_value = "compare.csv")]
        output: PathBuf,
    },
    /// Run the inequality battery and the step-size schedule check on a manifold.
    Check {
        /// "euclidean:n", "hyperbolic:n:c" or "spd:n".
        manifold: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let root = output::output_root();
    let outcome = match cli.command {
        Command::Run { config } => run::cmd_run(&config, &root),
        Command::Compare { configs, output } => compare::cmd_compare(&configs, &root.join(output)),
        Command::Check {
            manifold,
            trials,
            seed,
        } => check::cmd_check(&manifold, trials, seed),
    };
    match outcome {
        Outcome::Ok => ExitCode::SUCCESS,
        Outcome::Violation(m) => {
            eprintln!("violation: {m}");
            ExitCode::from(1)
        }
        Outcome::Invalid(m) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Outcome::Numerical(m) => {
            eprintln!("numerical abort: {m}");
            ExitCode::from(3)
        }
    }
}
