//! Scenario files and command implementations behind the `ewape` binary.
//!
//! A scenario file is TOML:
//!
//! ```toml
//! alphas = [2.0, 1.0, 2.0]          # or: preset = "alpha1"
//! rhos = [0.3333333333333333, 0.6666666666666666]
//! r_f = 1.0                         # compare also takes a list
//! N = 127                           # likewise
//! method = "eigexp"                 # or "schur_ref"
//! # terms = 20                      # fixed expansion length / spectrum size
//!
//! [ic]
//! kind = "sine"                     # or "char" with params = [a, b]
//! params = [2]
//!
//! [solver]                          # any SolverConfig field
//! truncation_tol = 5e-7
//!
//! [reference]
//! n_ref = 8191
//! cache_dir = "eig-cache"
//! ```
//!
//! Command-line flags replace the corresponding file values.

mod commands;
mod scenario;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::*;
pub use scenario::{Method, Overrides, Scenario, ScenarioSet};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "ewape", version, about = "Eigenfunction expansion solver for the wide-angle parabolic equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues and solver diagnostics (spectrum.csv).
    Spectrum(ScenarioArgs),
    /// Field at r_f on the grid (solution.csv, summary.json).
    Solve(ScenarioArgs),
    /// Both methods over every (r_f, N) against a fine reference (compare.csv, compare.json).
    Compare(ScenarioArgs),
    /// First column of the change-of-basis matrix (decay.csv, decay.json).
    Decay(ScenarioArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Named wavenumber: alpha1, alpha2, alpha2_steep, alpha3.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alphas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub rhos: Option<Vec<f64>>,
    /// sine:J or char:a,b
    #[arg(long)]
    pub ic: Option<String>,
    /// Final range; a comma list for compare.
    #[arg(long, value_delimiter = ',')]
    pub rf: Option<Vec<f64>>,
    /// Interior grid points; a comma list for compare.
    #[arg(long = "N", value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// eigexp or schur_ref
    #[arg(long)]
    pub method: Option<String>,
    /// Expansion terms (solve) or number of eigenpairs (spectrum).
    #[arg(long)]
    pub terms: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Reference grid size for error estimates.
    #[arg(long)]
    pub n_ref: Option<usize>,
    /// Directory for cached reference decompositions.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for compare (default: available cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl ScenarioArgs {
    pub fn overrides(&self) -> Result<Overrides> {
        Ok(Overrides {
            preset: self.preset.clone(),
            alphas: self.alphas.clone(),
            rhos: self.rhos.clone(),
            ic: self.ic.clone(),
            r_f: self.rf.clone(),
            n: self.n.clone(),
            method: self.method.as_deref().map(str::parse).transpose()?,
            terms: self.terms,
            out: self.out.clone(),
            n_ref: self.n_ref,
            cache_dir: self.cache_dir.clone(),
        })
    }

    pub fn scenarios(&self) -> Result<ScenarioSet> {
        ScenarioSet::load(self.config.as_deref(), &self.overrides()?)
    }
}

/// Runs one command; returns a line for stdout.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Spectrum(a) => {
            let sc = a.scenarios()?;
            let sc = sc.single()?;
            let res = cmd_spectrum(sc)?;
            Ok(format!(
                "{} eigenpairs ({} positive) -> {}",
                res.modes.len(),
                res.modes.iter().filter(|m| m.lambda > 0.0).count(),
                sc.out_dir.join("spectrum.csv").display()
            ))
        }
        Command::Solve(a) => {
            let sc = a.scenarios()?;
            let sc = sc.single()?;
            let s = cmd_solve(sc)?.summary;
            let err = s.error_vs_reference.map(|e| format!(", error {e:.2e}")).unwrap_or_default();
            Ok(format!(
                "{} N={} r_f={}: {} terms, {:.1} ms{err} -> {}",
                s.method,
                s.n,
                s.r_f,
                s.terms,
                s.wall_time_ms,
                sc.out_dir.display()
            ))
        }
        Command::Compare(a) => {
            let set = a.scenarios()?;
            let jobs = a
                .jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rows = cmd_compare(&set, jobs)?;
            Ok(format!("{} rows -> {}", rows.len(), set.scenarios[0].out_dir.join("compare.csv").display()))
        }
        Command::Decay(a) => {
            let sc = a.scenarios()?;
            let sc = sc.single()?;
            let s = cmd_decay(sc)?;
            let slope = s.slope.map_or("undefined".to_string(), |v| format!("{v:.3}"));
            Ok(format!(
                "N={}: slope {slope}, alternating zeros {} -> {}",
                s.n,
                s.alternating_zeros,
                sc.out_dir.join("decay.csv").display()
            ))
        }
    }
}

/// 3 for numerical failures, 2 for everything else.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        3
    } else {
        2
    }
}
