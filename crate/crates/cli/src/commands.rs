//! Subcommand implementations. Each validates its parameters, runs, and
//! returns the files to write plus the text for stdout.

use std::path::{Path, PathBuf};

use fho_core::nonlinear::{blowup_rate_check, critical_exponent, solve, SemilinearProblem, SolveOptions};
use fho_core::norms::{
    log_time_grid, scan_family, scan_ratios, DecayScanResult, TestFamily, DEFAULT_SEED,
};
use fho_core::propagator::SubordinationQuadrature;
use fho_core::strichartz::{admissible_triplets, homogeneous_check};
use fho_core::{
    build_basis, Complex, LebesgueExponent, PropagatorSpec, SpectralField, UniformGrid,
};
use rayon::prelude::*;

use crate::cli::{
    Command, DecayScanArgs, PropagateArgs, SolveArgs, StrichartzArgs, SubcheckArgs,
};
use crate::error::{CliError, ExitKind};
use crate::formats::{self, FieldFile, StrichartzRow, SubcheckRow};

/// Concentration floors compared for refinement stability.
const STRICHARTZ_COARSE_EPS: f64 = 0.1;
const STRICHARTZ_FINE_EPS: f64 = 0.01;
const STRICHARTZ_STABILITY: f64 = 0.2;

/// What a command produced: files to write, text for stdout, and the exit
/// class if the run itself signals failure.
#[derive(Debug, Default)]
pub struct Output {
    pub files: Vec<(PathBuf, String)>,
    pub stdout: String,
    pub failure: Option<CliError>,
}

impl Output {
    /// Writes `text` to `path`, or to stdout when no path is given.
    fn emit(&mut self, path: Option<&Path>, text: String) {
        match path {
            Some(p) => self.files.push((p.to_path_buf(), text)),
            None => self.stdout.push_str(&text),
        }
    }
}

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Propagate(a) => propagate(a),
        Command::DecayScan(a) => decay_scan(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Strichartz(a) => strichartz(a),
        Command::Subcheck(a) => subcheck(a),
        Command::Selftest(a) => crate::selftest::run(a.out.as_deref()),
    }
}

fn exponent(name: &str, p: f64) -> Result<LebesgueExponent, CliError> {
    if p == f64::INFINITY {
        Ok(LebesgueExponent::Infinity)
    } else {
        LebesgueExponent::new(p).map_err(|_| CliError::precondition(format!("--{name} must lie in [1, inf], got {p}")))
    }
}

fn check_dim(dim: usize) -> Result<(), CliError> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(CliError::precondition(format!("--dim must be 1 or 2, got {dim}")))
    }
}

fn check_positive(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(CliError::precondition(format!("--{name} must be positive, got {x}")))
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("FHO_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::new(ExitKind::Type, format!("FHO_SEED is not an integer: `{v}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn propagate(a: &PropagateArgs) -> Result<Output, CliError> {
    check_dim(a.dim)?;
    let spec = PropagatorSpec::new(a.beta, a.t, a.route)?;
    let input = match &a.input {
        Some(p) => formats::read_field_csv(&read_file(p)?)?,
        None => {
            let basis = formats::default_basis(a.dim, a.modes)?;
            FieldFile::Spectral(SpectralField::unit(basis, &[0, 0][..a.dim])?)
        }
    };
    let mut out = Output::default();
    match input {
        FieldFile::Spectral(f) => {
            if f.basis().dim() != a.dim {
                return Err(CliError::precondition(format!(
                    "--dim {} but the input is {}-dimensional",
                    a.dim,
                    f.basis().dim()
                )));
            }
            out.emit(a.out.as_deref(), formats::write_spectral_csv(&spec.apply(&f)?));
        }
        FieldFile::Grid(g) => {
            if g.grid().dim() != a.dim {
                return Err(CliError::precondition(format!(
                    "--dim {} but the input is {}-dimensional",
                    a.dim,
                    g.grid().dim()
                )));
            }
            let basis = build_basis(a.dim, a.modes, *g.grid())?;
            let f = fho_core::hermite::project(&g, basis)?;
            out.emit(a.out.as_deref(), formats::write_grid_csv(&spec.apply(&f)?.synthesize()));
        }
    }
    Ok(out)
}

fn decay_scan(a: &DecayScanArgs) -> Result<Output, CliError> {
    check_dim(a.dim)?;
    check_positive("beta", a.beta)?;
    let (p, q) = (exponent("p", a.p)?, exponent("q", a.q)?);
    check_positive("t-min", a.t_min)?;
    if !(a.t_max > a.t_min) || a.num_t < 2 {
        return Err(CliError::precondition("need t-max > t-min and num-t ≥ 2"));
    }
    let times = log_time_grid(a.t_min, a.t_max, a.num_t)?;
    let family = scan_family(a.dim, a.beta, a.modes, a.t_min, seed(a.seed)?)?;
    let ratios = times
        .par_iter()
        .map(|&t| scan_ratios(&family, a.beta, p, q, &[t]).map(|r| r[0]))
        .collect::<Result<Vec<_>, _>>()?;
    let result = DecayScanResult::from_ratios(a.dim, a.beta, p, q, times, ratios)?;
    let mut out = Output::default();
    out.emit(a.out.as_deref(), formats::write_scan_csv(&result));
    out.emit(a.summary.as_deref(), formats::scan_summary(&result).render());
    Ok(out)
}

/// `gaussian:amp=A,width=W` or `coeffs:file.csv`.
fn initial_data(a: &SolveArgs) -> Result<SpectralField, CliError> {
    if let Some(path) = a.u0.strip_prefix("coeffs:") {
        let f = formats::read_spectral_csv(&read_file(Path::new(path))?)?;
        if f.basis().dim() != a.dim {
            return Err(CliError::precondition(format!(
                "--dim {} but {path} is {}-dimensional",
                a.dim,
                f.basis().dim()
            )));
        }
        return Ok(f);
    }
    let Some(params) = a.u0.strip_prefix("gaussian:") else {
        return Err(CliError::new(
            ExitKind::Type,
            format!("--u0 must be `gaussian:amp=A,width=W` or `coeffs:FILE`, got `{}`", a.u0),
        ));
    };
    let (mut amp, mut width) = (1.0, 1.0);
    for kv in params.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::new(ExitKind::Type, format!("--u0: `{kv}` is not key=value")))?;
        let v: f64 = v
            .parse()
            .map_err(|_| CliError::new(ExitKind::Type, format!("--u0: `{v}` is not a number")))?;
        match k {
            "amp" => amp = v,
            "width" => width = v,
            _ => return Err(CliError::new(ExitKind::Usage, format!("--u0: unknown key `{k}`"))),
        }
    }
    check_positive("u0 width", width)?;
    let basis = build_basis(a.dim, a.modes, UniformGrid::default_for_degree(a.dim, a.modes)?)?;
    Ok(SpectralField::project_fn(basis, move |x| {
        Complex::new(amp * (-(x[0] * x[0] + x[1] * x[1]) / (2.0 * width)).exp(), 0.0)
    }))
}

fn solve_cmd(a: &SolveArgs) -> Result<Output, CliError> {
    check_dim(a.dim)?;
    check_positive("beta", a.beta)?;
    if !(a.gamma.is_finite() && a.gamma > 1.0) {
        return Err(CliError::precondition(format!("--gamma must exceed 1, got {}", a.gamma)));
    }
    let p = match a.p {
        Some(p) => exponent("p", p)?,
        None => exponent("p", critical_exponent(a.dim, a.gamma, a.beta).max(1.0))?,
    };
    check_positive("t-end", a.t_end)?;
    check_positive("dt", a.dt)?;
    if !(a.blowup_threshold >= 1e3) {
        return Err(CliError::precondition("--blowup-threshold must be at least 1e3"));
    }
    let prob = SemilinearProblem::new(a.beta, a.gamma, p, initial_data(a)?)?;
    let mut opts = SolveOptions::new(a.t_end, a.dt);
    opts.blowup_threshold = a.blowup_threshold;
    opts.dt_min = opts.dt_min.min(a.dt);
    let traj = solve(&prob, &opts)?;
    let exponent = traj
        .status
        .t_est()
        .and_then(|_| blowup_rate_check(&traj, &prob).ok());
    let mut out = Output::default();
    out.emit(a.out.as_deref(), formats::write_trajectory_csv(&traj));
    out.emit(a.summary.as_deref(), formats::trajectory_summary(&traj, exponent).render());
    if traj.status == fho_core::nonlinear::SolveStatus::ToleranceFailure {
        out.failure = Some(CliError::new(
            ExitKind::Numerical,
            "step halving exhausted without completion or a blow-up signal",
        ));
    }
    Ok(out)
}

fn strichartz(a: &StrichartzArgs) -> Result<Output, CliError> {
    check_dim(a.dim)?;
    check_positive("beta", a.beta)?;
    check_positive("t-end", a.t_end)?;
    let r = exponent("r", a.r)?;
    if a.count == 0 {
        return Err(CliError::precondition("--count must be positive"));
    }
    let coarse = TestFamily::gaussians(a.dim, &[1.0])?.with_ladder(a.dim, STRICHARTZ_COARSE_EPS);
    let fine = TestFamily::gaussians(a.dim, &[1.0])?.with_ladder(a.dim, STRICHARTZ_FINE_EPS);
    let rows = admissible_triplets(a.dim, a.beta, r, a.count)
        .par_iter()
        .map(|t| {
            let c = homogeneous_check(t, &coarse, a.t_end)?;
            let f = homogeneous_check(t, &fine, a.t_end)?;
            Ok(StrichartzRow {
                q: t.q().value(),
                p: t.p().value(),
                r: t.r().value(),
                sup_ratio: f,
                stable: (f - c).abs() <= STRICHARTZ_STABILITY * c,
            })
        })
        .collect::<Result<Vec<_>, fho_core::Error>>()?;
    let mut out = Output::default();
    out.emit(a.out.as_deref(), formats::write_strichartz_csv(&rows));
    Ok(out)
}

fn subcheck(a: &SubcheckArgs) -> Result<Output, CliError> {
    for &t in &a.t {
        check_positive("t", t)?;
    }
    if let Some(u) = a.u.iter().find(|u| !(**u >= 0.0 && u.is_finite())) {
        return Err(CliError::precondition(format!("--u entries must be nonnegative, got {u}")));
    }
    let mut rows = Vec::new();
    for &t in &a.t {
        let quad = SubordinationQuadrature::new(t)?;
        for &u in &a.u {
            rows.push(SubcheckRow {
                t,
                u,
                numeric: quad.laplace(u),
                exact: (-t * u.sqrt()).exp(),
            });
        }
    }
    let mut out = Output::default();
    out.emit(a.out.as_deref(), formats::write_subcheck_csv(&rows));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve_args(u0: &str) -> SolveArgs {
        SolveArgs {
            dim: 1,
            beta: 1.0,
            gamma: 3.0,
            p: None,
            u0: u0.into(),
            t_end: 0.1,
            dt: 0.05,
            modes: 8,
            blowup_threshold: 1e8,
            out: None,
            summary: None,
        }
    }

    #[test]
    fn gaussian_initial_data() {
        let f = initial_data(&solve_args("gaussian:amp=2,width=1")).unwrap();
        // 2e^{-x²/2} = 2π^{1/4}Φ_0
        let c = f.coeff(&[0]).unwrap().re;
        assert!((c - 2.0 * std::f64::consts::PI.powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn malformed_initial_data() {
        assert_eq!(initial_data(&solve_args("box:1")).unwrap_err().kind, ExitKind::Type);
        assert_eq!(initial_data(&solve_args("gaussian:amp=x")).unwrap_err().kind, ExitKind::Type);
        assert_eq!(
            initial_data(&solve_args("gaussian:width=-1")).unwrap_err().kind,
            ExitKind::Precondition
        );
    }
}
