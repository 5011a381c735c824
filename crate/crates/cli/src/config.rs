//! `--config` merging and `--print-config`.
//!
//! A config file is a flat TOML table whose keys are flag names (`t-end` or
//! `t_end`). Its entries are spliced in as flags right after the subcommand,
//! ahead of the real command-line flags, which therefore win. Unknown keys
//! reach clap as unknown flags and are rejected there.

use std::ffi::OsString;
use std::path::Path;

use crate::cli::{Command, DecayScanArgs, PropagateArgs, SolveArgs, StrichartzArgs, SubcheckArgs};
use crate::error::{CliError, ExitKind};

/// Stamp written into every JSON summary.
pub const VERSION_STAMP: &str = concat!("fho ", env!("CARGO_PKG_VERSION"));

/// A parsed invocation, as dispatched.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub version_stamp: &'static str,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            version_stamp: VERSION_STAMP,
        }
    }

    /// `fho <subcommand> --flag value …` listing every parameter.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec!["fho".to_string(), self.command.name().to_string()];
        let mut flag = |k: &str, v: String| {
            out.push(format!("--{k}"));
            out.push(v);
        };
        match &self.command {
            Command::Propagate(PropagateArgs { dim, beta, t, route, modes, input, out: o }) => {
                flag("dim", dim.to_string());
                flag("beta", beta.to_string());
                flag("t", t.to_string());
                flag("route", route.to_string());
                flag("modes", modes.to_string());
                if let Some(p) = input {
                    flag("input", p.display().to_string());
                }
                if let Some(p) = o {
                    flag("out", p.display().to_string());
                }
            }
            Command::DecayScan(a) => {
                let DecayScanArgs { dim, beta, p, q, t_min, t_max, num_t, modes, seed, out: o, summary } = a;
                flag("dim", dim.to_string());
                flag("beta", beta.to_string());
                flag("p", exponent(*p));
                flag("q", exponent(*q));
                flag("t-min", t_min.to_string());
                flag("t-max", t_max.to_string());
                flag("num-t", num_t.to_string());
                flag("modes", modes.to_string());
                if let Some(s) = seed {
                    flag("seed", s.to_string());
                }
                if let Some(p) = o {
                    flag("out", p.display().to_string());
                }
                if let Some(p) = summary {
                    flag("summary", p.display().to_string());
                }
            }
            Command::Solve(a) => {
                let SolveArgs { dim, beta, gamma, p, u0, t_end, dt, modes, blowup_threshold, out: o, summary } = a;
                flag("dim", dim.to_string());
                flag("beta", beta.to_string());
                flag("gamma", gamma.to_string());
                if let Some(p) = p {
                    flag("p", exponent(*p));
                }
                flag("u0", u0.clone());
                flag("t-end", t_end.to_string());
                flag("dt", dt.to_string());
                flag("modes", modes.to_string());
                flag("blowup-threshold", blowup_threshold.to_string());
                if let Some(p) = o {
                    flag("out", p.display().to_string());
                }
                if let Some(p) = summary {
                    flag("summary", p.display().to_string());
                }
            }
            Command::Strichartz(StrichartzArgs { dim, beta, r, t_end, count, out: o }) => {
                flag("dim", dim.to_string());
                flag("beta", beta.to_string());
                flag("r", exponent(*r));
                flag("t-end", t_end.to_string());
                flag("count", count.to_string());
                if let Some(p) = o {
                    flag("out", p.display().to_string());
                }
            }
            Command::Subcheck(SubcheckArgs { t, u, out: o }) => {
                flag("t", list(t));
                flag("u", list(u));
                if let Some(p) = o {
                    flag("out", p.display().to_string());
                }
            }
            Command::Selftest(a) => {
                if let Some(p) = &a.out {
                    flag("out", p.display().to_string());
                }
            }
        }
        out
    }
}

fn exponent(p: f64) -> String {
    if p == f64::INFINITY {
        "inf".into()
    } else {
        p.to_string()
    }
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

/// Removes `--config FILE` / `--config=FILE` from `args` and splices the
/// file's entries in after the subcommand.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            match it.next() {
                Some(p) => path = Some(p),
                None => return Err(CliError::new(ExitKind::Usage, "--config needs a file")),
            }
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(OsString::from(p));
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let flags = config_flags(Path::new(&path))?;
    let Some(pos) = rest.iter().position(|a| Command::NAMES.contains(&a.to_string_lossy().as_ref())) else {
        return Err(CliError::new(ExitKind::Usage, "--config needs a subcommand"));
    };
    rest.splice(pos + 1..pos + 1, flags);
    Ok(rest)
}

fn config_flags(path: &Path) -> Result<Vec<OsString>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(ExitKind::Io, format!("{}: {e}", path.display())))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| CliError::new(ExitKind::Usage, format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (key, value) in table {
        let v = match value {
            toml::Value::String(s) => s,
            toml::Value::Integer(i) => i.to_string(),
            toml::Value::Float(f) if f == f64::INFINITY => "inf".into(),
            toml::Value::Float(f) => f.to_string(),
            toml::Value::Boolean(b) => b.to_string(),
            toml::Value::Array(xs) => xs
                .iter()
                .map(|x| match x {
                    toml::Value::Integer(i) => Ok(i.to_string()),
                    toml::Value::Float(f) => Ok(f.to_string()),
                    _ => Err(CliError::new(ExitKind::Type, format!("config key `{key}`: arrays hold numbers"))),
                })
                .collect::<Result<Vec<_>, _>>()?
                .join(","),
            other => {
                return Err(CliError::new(
                    ExitKind::Type,
                    format!("config key `{key}`: unsupported value {other}"),
                ))
            }
        };
        out.push(OsString::from(format!("--{}", key.replace('_', "-"))));
        out.push(OsString::from(v));
    }
    Ok(out)
}
