//! Command-line surface. Every flag has a default or is optional so that
//! range checks happen after parsing and map to the precondition exit code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fho_core::Route;

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "fho", version, about = "Fractional Hermite heat semigroups and friends")]
pub struct Cli {
    /// TOML file of flag values for the subcommand; command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Print the resolved invocation as flags and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Apply e^{-tH^β} to a field read from CSV (Φ_0 without --input).
    Propagate(PropagateArgs),
    /// Operator-ratio scan of ‖e^{-tH^β}‖_{p→q} over a log-spaced time grid.
    DecayScan(DecayScanArgs),
    /// Solve ∂_t u + H^β u = |u|^{γ−1}u by Duhamel/Picard steps.
    Solve(SolveArgs),
    /// Sup-ratios of space-time norms over admissible triplets.
    Strichartz(StrichartzArgs),
    /// Laplace identity of the ½-stable subordinator quadrature.
    Subcheck(SubcheckArgs),
    /// Quick end-to-end checks; JSON report, nonzero exit on failure.
    Selftest(SelftestArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Propagate(_) => "propagate",
            Command::DecayScan(_) => "decay-scan",
            Command::Solve(_) => "solve",
            Command::Strichartz(_) => "strichartz",
            Command::Subcheck(_) => "subcheck",
            Command::Selftest(_) => "selftest",
        }
    }

    pub const NAMES: [&'static str; 6] =
        ["propagate", "decay-scan", "solve", "strichartz", "subcheck", "selftest"];
}

/// `inf` or a float; range checks come later.
pub fn parse_exponent(s: &str) -> Result<f64, String> {
    match s.trim() {
        "inf" | "Inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        other => other.parse::<f64>().map_err(|e| format!("`{other}`: {e}")),
    }
}

#[derive(Args, Debug, Clone, PartialEq)]
#[command(args_override_self = true)]
pub struct PropagateArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = Route::Spectral)]
    pub route: Route,
    /// Maximal Hermite degree per axis for grid input.
    #[arg(long, default_value_t = 32)]
    pub modes: usize,
    /// Grid (`x[,y],re,im`) or spectral (`alpha1[,alpha2],re,im`) CSV.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
#[command(args_override_self = true)]
pub struct DecayScanArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, value_parser = parse_exponent, default_value = "1")]
    pub p: f64,
    #[arg(long, value_parser = parse_exponent, default_value = "inf")]
    pub q: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub t_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 41)]
    pub num_t: usize,
    #[arg(long, default_value_t = 48)]
    pub modes: usize,
    /// Seed of the random family member (default 42, or `FHO_SEED`).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON summary path (stdout when omitted).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
#[command(args_override_self = true)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 3.0)]
    pub gamma: f64,
    /// Norm exponent; the critical exponent d(γ−1)/(2β) when omitted.
    #[arg(long, value_parser = parse_exponent)]
    pub p: Option<f64>,
    /// `gaussian:amp=A,width=W` (A·e^{-|x|²/(2W)}) or `coeffs:file.csv`.
    #[arg(long, default_value = "gaussian:amp=1,width=1")]
    pub u0: String,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 24)]
    pub modes: usize,
    #[arg(long, default_value_t = 1e8)]
    pub blowup_threshold: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
#[command(args_override_self = true)]
pub struct StrichartzArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, value_parser = parse_exponent, default_value = "2")]
    pub r: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_end: f64,
    /// Number of lattice points in 1/p.
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
#[command(args_override_self = true)]
pub struct SubcheckArgs {
    #[arg(long, value_delimiter = ',', action = clap::ArgAction::Set, num_args = 1.., default_value = "0.5,1,2")]
    pub t: Vec<f64>,
    #[arg(long, value_delimiter = ',', action = clap::ArgAction::Set, num_args = 1.., default_value = "0,0.5,1,5,20")]
    pub u: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
#[command(args_override_self = true)]
pub struct SelftestArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}
