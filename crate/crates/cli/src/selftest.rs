//! End-to-end checks mirroring three acceptance criteria: basis integrity,
//! the subordinator Laplace identity, and the small-time decay exponents.

use std::path::Path;

use fho_core::hermite::{project, synthesize};
use fho_core::norms::{fit_small_t, log_time_grid, scan_family, scan_ratios, sigma_beta, DEFAULT_SEED};
use fho_core::propagator::SubordinationQuadrature;
use fho_core::{build_basis, LebesgueExponent, SpectralField, UniformGrid};
use rayon::prelude::*;

use crate::commands::Output;
use crate::error::{CliError, ExitKind};
use crate::formats::Json;

struct Check {
    id: u32,
    name: &'static str,
    pass: bool,
    value: f64,
    tolerance: f64,
}

fn basis_integrity() -> fho_core::Result<Check> {
    let basis = build_basis(1, 64, UniformGrid::default_for_degree(1, 64)?)?;
    let m = basis.modes();
    let gram = basis.gram_matrix();
    let gram_err = (0..m * m)
        .map(|i| (gram[i] - if i / m == i % m { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    let f = SpectralField::random_band_limited(basis.clone(), DEFAULT_SEED, 64, false);
    let rt = project(&synthesize(&f), basis)?.max_abs_diff(&f)?;
    let value = gram_err.max(rt);
    Ok(Check { id: 1, name: "basis integrity", pass: value <= 1e-10, value, tolerance: 1e-10 })
}

fn laplace_identity() -> fho_core::Result<Check> {
    let mut value = 0.0f64;
    for t in [0.5, 1.0, 2.0] {
        let quad = SubordinationQuadrature::new(t)?;
        for u in [0.0f64, 0.5, 1.0, 5.0, 20.0] {
            value = value.max((quad.laplace(u) - (-t * u.sqrt()).exp()).abs());
        }
    }
    Ok(Check { id: 3, name: "subordinator Laplace identity", pass: value <= 1e-8, value, tolerance: 1e-8 })
}

/// Worst relative deviation of the fitted slope from `−σ_β`.
fn small_time_exponent() -> fho_core::Result<Check> {
    let times = log_time_grid(1e-3, 0.1, 21)?;
    let inf = LebesgueExponent::Infinity;
    let devs = [(1.0, 1.0), (1.0, 2.0), (0.5, 1.0), (2.0, 1.0)]
        .par_iter()
        .map(|&(beta, p)| {
            let p = LebesgueExponent::Finite(p);
            let family = scan_family(1, beta, 48, 1e-3, DEFAULT_SEED)?;
            let slope = fit_small_t(&times, &scan_ratios(&family, beta, p, inf, &times)?)?.slope;
            let sigma = sigma_beta(1, beta, p, inf);
            Ok((slope + sigma).abs() / sigma)
        })
        .collect::<fho_core::Result<Vec<f64>>>()?;
    let value = devs.into_iter().fold(0.0, f64::max);
    Ok(Check { id: 5, name: "small-time decay exponent", pass: value <= 0.1, value, tolerance: 0.1 })
}

pub fn run(out_path: Option<&Path>) -> Result<Output, CliError> {
    let checks = [basis_integrity()?, laplace_identity()?, small_time_exponent()?];
    let all = checks.iter().all(|c| c.pass);
    let report = Json::object([
        (
            "criteria",
            Json::Array(
                checks
                    .iter()
                    .map(|c| {
                        Json::object([
                            ("id", Json::Int(c.id as i64)),
                            ("name", Json::Str(c.name.into())),
                            ("pass", Json::Bool(c.pass)),
                            ("value", Json::Num(c.value)),
                            ("tolerance", Json::Num(c.tolerance)),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("pass", Json::Bool(all)),
        ("version", Json::Str(crate::config::VERSION_STAMP.into())),
    ]);
    let mut out = Output::default();
    match out_path {
        Some(p) => out.files.push((p.to_path_buf(), report.render())),
        None => out.stdout = report.render(),
    }
    if !all {
        let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.id.to_string()).collect();
        out.failure = Some(CliError::new(
            ExitKind::Numerical,
            format!("selftest failed: criteria {}", failed.join(", ")),
        ));
    }
    Ok(out)
}
