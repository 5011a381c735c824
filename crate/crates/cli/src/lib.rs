//! Command-line driver for `fho-core`: argument and config parsing, the
//! subcommand registry, and deterministic CSV/JSON output.
//!
//! Exit codes: 0 ok, 2 usage, 3 type, 4 precondition, 5 I/O, 6 numerical.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use config::RunConfig;
pub use error::{CliError, ExitKind};

/// Parsed invocation plus the `--print-config` switch.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub config: RunConfig,
    pub print_config: bool,
}

/// Parses `argv` (program name first), merging any `--config` file.
pub fn parse_args<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = config::merge_config(argv.into_iter().map(Into::into).collect())?;
    let cli = cli::Cli::try_parse_from(args)?;
    Ok(Invocation {
        config: RunConfig::new(cli.command),
        print_config: cli.print_config,
    })
}

/// `FHO_THREADS` sizes the worker pool; ignored if the pool already exists.
fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("FHO_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::new(ExitKind::Type, format!("FHO_THREADS is not an integer: `{v}`")))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(argv: Vec<OsString>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let inv = parse_args(argv)?;
    if inv.print_config {
        let line = inv.config.to_args().join(" ");
        writeln!(stdout, "{line}").map_err(|e| CliError::new(ExitKind::Io, e.to_string()))?;
        return Ok(());
    }
    init_threads()?;
    let out = commands::run(&inv.config.command)?;
    for (path, text) in &out.files {
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))?;
    }
    stdout
        .write_all(out.stdout.as_bytes())
        .map_err(|e| CliError::new(ExitKind::Io, e.to_string()))?;
    match out.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match execute(argv.into_iter().map(Into::into).collect(), stdout) {
        Ok(()) => 0,
        Err(e) if e.kind == ExitKind::Usage && e.message.starts_with("Usage") => {
            let _ = write!(stderr, "{}", e.message);
            ExitKind::Usage as i32
        }
        Err(e) => {
            let _ = writeln!(stderr, "fho: {}", e.message.trim_end());
            e.code()
        }
    }
}
