//! `salience`: frontier sweeps, diagnostics and replication tables for the
//! tax-salience model.

mod commands;
mod config;
mod error;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::GridSpec;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "salience", version, about = "Optimal taxation when taxes are misperceived")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// TOML file describing the economy and sweep settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output files; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Inequality aversion.
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Labor-supply elasticity.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Solver tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Salience grid as start:stop:count.
    #[arg(long = "s-grid", global = true)]
    pub s_grid: Option<GridSpec>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Recorded with the run; the calibration itself is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The welfare-maximizing tax at one salience level.
    Optimize {
        #[arg(long)]
        s: f64,
    },
    /// The morally efficient frontier over the salience grid.
    Frontier,
    /// Frontier tables for every (rho, epsilon) pair, one file each.
    Replicate,
    /// Iso-equality or iso-efficiency paths through (s, tau) space.
    Paths {
        #[arg(long, conflicts_with = "iso_efficiency")]
        iso_equality: bool,
        #[arg(long)]
        iso_efficiency: bool,
        /// Equality level to hold fixed; defaults to the optimum at `--s1`.
        #[arg(long = "E")]
        equality: Option<f64>,
        /// Efficiency level to hold fixed; defaults to the optimum at `--s0`.
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        s0: f64,
        #[arg(long, default_value_t = 0.9)]
        s1: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Substitution and income effects of salience on optimal equality.
    Decompose {
        #[arg(long)]
        s0: f64,
        #[arg(long, default_value_t = salience_core::geometry::DEFAULT_SALIENCE_STEP)]
        h: f64,
    },
    /// The price of equality and its salience derivative.
    Price {
        #[arg(long)]
        s: f64,
        /// Equality level; defaults to the optimum at `--s`.
        #[arg(long = "E")]
        equality: Option<f64>,
        #[arg(long, default_value_t = salience_core::geometry::DEFAULT_SALIENCE_STEP)]
        h: f64,
    },
    /// Income and consumption tax rates reproducing (tau, s).
    TwoTax {
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        sc: f64,
    },
    /// Quantile nodes, anchor incomes and backed-out wages.
    Calibrate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.common) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
