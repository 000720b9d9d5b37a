//! Command-line surface: scenario loading, the `nondim`, `steady`, `crit`,
//! `run` and `regime` commands, and result serialization.
//!
//! Exit statuses: 0 success, 1 invalid input or configuration, 2 solver
//! failure, 3 a transient run that ended in blow-up.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod output;
pub mod scenario;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use flashsim_core::{RegimeError, SolveError, SteadyError};
use thiserror::Error;

pub use output::Format;
pub use scenario::{load_scenario, parse_scenario, ModelKind, Outputs, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_BLOWUP: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("solver failure: {0}")]
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(_) => EXIT_SOLVER,
            _ => EXIT_INVALID,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::InvalidInput { .. } | SolveError::GeometryMismatch { .. } | SolveError::Model(_) => {
                CliError::Invalid(e.to_string())
            }
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<SteadyError> for CliError {
    fn from(e: SteadyError) -> Self {
        match e {
            SteadyError::InvalidParameter { .. } | SteadyError::InsulatedBoundary { .. } => {
                CliError::Invalid(e.to_string())
            }
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<RegimeError> for CliError {
    fn from(e: RegimeError) -> Self {
        match e {
            RegimeError::Steady(s) => s.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "flashsim", version, about = "Joule-heating flash sintering models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Scenario file (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory; tables go to standard output when omitted where
    /// that makes sense.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CriterionArg {
    Radial,
    Lumped,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the dimensionless groups of a scenario.
    Nondim(#[command(flatten)] Common),
    /// Exact steady states (or equilibria) for the scenario's model.
    Steady(#[command(flatten)] Common),
    /// Critical heating over a range of cooling values.
    Crit {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        model: ModelKind,
        /// Side cooling range `lo:hi:n`, geometric (radial, lumped).
        #[arg(long)]
        beta_range: Option<String>,
        /// Electrode cooling range `lo:hi:n`, geometric (axial, high_aspect).
        #[arg(long)]
        alpha_range: Option<String>,
        /// Side cooling `B` of the high-aspect model.
        #[arg(long, default_value_t = 0.0)]
        b_value: f64,
    },
    /// Transient solve of the scenario.
    Run(#[command(flatten)] Common),
    /// Flash/no-flash classification over furnace temperature and field.
    Regime {
        #[command(flatten)]
        common: Common,
        /// Furnace temperatures `lo:hi:n` in K, uniform.
        #[arg(long, default_value = "900:1400:51")]
        t_range: String,
        /// Fields `lo:hi:n` in V/m, geometric.
        #[arg(long, default_value = "1e3:1e5:41")]
        e_range: String,
        #[arg(long, value_enum, default_value_t = CriterionArg::Radial)]
        criterion: CriterionArg,
    },
}

/// Parses `lo:hi:n`.
pub fn parse_range(flag: &str, text: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Usage(format!("--{flag}: expected lo:hi:n, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi && n >= 1) {
        return Err(CliError::Usage(format!(
            "--{flag}: need finite lo <= hi and n >= 1, got `{text}`"
        )));
    }
    Ok((lo, hi, n))
}

/// `n` values from `lo` to `hi` with constant ratio.
pub fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| {
            if k == n - 1 {
                hi
            } else {
                lo * (hi / lo).powf(k as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// Runs the command line and returns the exit status. Diagnostics go to
/// standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("x", "0.01:10:50").unwrap(), (0.01, 10.0, 50));
        assert!(parse_range("x", "1:2").is_err());
        assert!(parse_range("x", "2:1:3").is_err());
        assert!(parse_range("x", "a:1:3").is_err());
    }

    #[test]
    fn geometric_hits_endpoints() {
        let v = geometric(0.01, 10.0, 50);
        assert_eq!(v.len(), 50);
        assert_eq!((v[0], v[49]), (0.01, 10.0));
        let r = v[1] / v[0];
        assert!(v.windows(2).all(|w| (w[1] / w[0] / r - 1.0).abs() < 1e-12));
    }
}
