use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::family::{TestFamily, DEFAULT_SEED};
use super::fit::{fit_line, LineFit};
use super::lebesgue::LebesgueExponent;
use crate::error::{Error, Result};
use crate::hermite::{build_basis, UniformGrid};
use crate::propagator::{PropagatorSpec, Route, SubordinationQuadrature};

/// Largest time in the small-time fit.
pub const SMALL_T_MAX: f64 = 0.1;
/// Smallest time in the large-time fit.
pub const LARGE_T_MIN: f64 = 2.0;
pub const MIN_FIT_POINTS: usize = 5;
/// Per-axis degree of the basis carrying the band-limited family members.
pub const DEFAULT_DEGREE: usize = 48;

/// `σ_β = (d/2β)|1/p − 1/q|`.
pub fn sigma_beta(dim: usize, beta: f64, p: LebesgueExponent, q: LebesgueExponent) -> f64 {
    dim as f64 / (2.0 * beta) * (p.reciprocal() - q.reciprocal()).abs()
}

/// Max over the family of `‖e^{-tH^β} f‖_q / ‖f‖_p`, a lower bound for the
/// operator norm.
pub fn operator_ratio(
    spec: &PropagatorSpec,
    p: LebesgueExponent,
    q: LebesgueExponent,
    family: &TestFamily,
) -> Result<f64> {
    let mut best: f64 = 0.0;
    for m in family.members() {
        best = best.max(m.ratio(spec, p, q)?);
    }
    Ok(best)
}

/// `count` log-spaced times from `t_min` to `t_max` inclusive.
pub fn log_time_grid(t_min: f64, t_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_max > t_min && count >= 2) {
        return Err(Error::Domain(format!(
            "time grid needs 0 < t_min < t_max and two points, got [{t_min}, {t_max}] x {count}"
        )));
    }
    let (a, b) = (t_min.ln(), t_max.ln());
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                t_max
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect())
}

/// Slope of `ln ratio` against `ln t` over `t ≤ 0.1`.
pub fn fit_small_t(times: &[f64], ratios: &[f64]) -> Result<LineFit> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = times
        .iter()
        .zip(ratios)
        .filter(|(t, _)| **t <= SMALL_T_MAX)
        .map(|(t, r)| (t.ln(), r.ln()))
        .unzip();
    fit_line(&xs, &ys, "small-t", MIN_FIT_POINTS)
}

/// Slope of `ln ratio` against `t` over `t ≥ 2`.
pub fn fit_large_t(times: &[f64], ratios: &[f64]) -> Result<LineFit> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = times
        .iter()
        .zip(ratios)
        .filter(|(t, _)| **t >= LARGE_T_MIN)
        .map(|(t, r)| (*t, r.ln()))
        .unzip();
    fit_line(&xs, &ys, "large-t", MIN_FIT_POINTS)
}

/// `C* = max_t ratio(t)·max(t^σ, e^{td^β}/e^{d^β})`: the smallest constant for
/// which both branches of the decay bound hold on the scan.
pub fn c_star(dim: usize, beta: f64, sigma: f64, times: &[f64], ratios: &[f64]) -> f64 {
    let rate = (dim as f64).powf(beta);
    times
        .iter()
        .zip(ratios)
        .map(|(&t, &r)| r * t.powf(sigma).max(((t - 1.0) * rate).exp()))
        .fold(0.0, f64::max)
}

/// Ratios over a time grid with fitted exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayScanResult {
    pub dim: usize,
    pub beta: f64,
    pub p: LebesgueExponent,
    pub q: LebesgueExponent,
    pub times: Vec<f64>,
    pub ratios: Vec<f64>,
    pub sigma_expected: f64,
    pub fitted_small_t_slope: f64,
    pub fitted_large_t_rate: f64,
    pub c_star: f64,
}

impl DecayScanResult {
    pub fn from_ratios(
        dim: usize,
        beta: f64,
        p: LebesgueExponent,
        q: LebesgueExponent,
        times: Vec<f64>,
        ratios: Vec<f64>,
    ) -> Result<Self> {
        if times.len() != ratios.len() {
            return Err(Error::Domain("times and ratios differ in length".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) || times.first().is_some_and(|t| *t <= 0.0) {
            return Err(Error::Domain("scan times must be positive and increasing".into()));
        }
        if ratios.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(Error::Domain("scan ratios must be positive and finite".into()));
        }
        let sigma_expected = sigma_beta(dim, beta, p, q);
        let fitted_small_t_slope = fit_small_t(&times, &ratios)?.slope;
        let fitted_large_t_rate = fit_large_t(&times, &ratios)?.slope;
        let c_star = c_star(dim, beta, sigma_expected, &times, &ratios);
        Ok(Self {
            dim,
            beta,
            p,
            q,
            times,
            ratios,
            sigma_expected,
            fitted_small_t_slope,
            fitted_large_t_rate,
            c_star,
        })
    }

    /// `C*·t^{-σ}`.
    pub fn expected_small_t(&self, t: f64) -> f64 {
        self.c_star * t.powf(-self.sigma_expected)
    }

    /// `C*·e^{-(t−1)d^β}`.
    pub fn expected_large_t(&self, t: f64) -> f64 {
        self.c_star * (-(t - 1.0) * (self.dim as f64).powf(self.beta)).exp()
    }
}

/// Canonical family on an `N`-degree basis plus a concentration ladder down
/// to [`TestFamily::ladder_floor`] of `t_min`.
pub fn scan_family(dim: usize, beta: f64, max_degree: usize, t_min: f64, seed: u64) -> Result<TestFamily> {
    let basis = build_basis(dim, max_degree, UniformGrid::default_for_degree(dim, max_degree)?)?;
    Ok(TestFamily::canonical(basis, seed)?.with_ladder(dim, TestFamily::ladder_floor(t_min, beta)))
}

/// Operator ratio at each time, spectral route.
pub fn scan_ratios(
    family: &TestFamily,
    beta: f64,
    p: LebesgueExponent,
    q: LebesgueExponent,
    times: &[f64],
) -> Result<Vec<f64>> {
    times
        .iter()
        .map(|&t| operator_ratio(&PropagatorSpec::new(beta, t, Route::Spectral)?, p, q, family))
        .collect()
}

/// Full decay scan with the default family (`N = 48`, seed 42).
pub fn decay_scan(
    beta: f64,
    p: LebesgueExponent,
    q: LebesgueExponent,
    dim: usize,
    times: &[f64],
) -> Result<DecayScanResult> {
    let t_min = times.first().copied().unwrap_or(1.0);
    let family = scan_family(dim, beta, DEFAULT_DEGREE, t_min, DEFAULT_SEED)?;
    let ratios = scan_ratios(&family, beta, p, q, times)?;
    DecayScanResult::from_ratios(dim, beta, p, q, times.to_vec(), ratios)
}

/// `ratio(t)·(tanh t)^{(d/2)|1/q − 1/p|}` along a scan (`β = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct TanhRateReport {
    pub times: Vec<f64>,
    pub normalized: Vec<f64>,
    pub sup: f64,
    pub inf: f64,
}

impl TanhRateReport {
    /// Relative spread `(sup − inf)/sup`.
    pub fn variation(&self) -> f64 {
        if self.sup == 0.0 {
            0.0
        } else {
            (self.sup - self.inf) / self.sup
        }
    }
}

pub fn tanh_rate_check(
    p: LebesgueExponent,
    q: LebesgueExponent,
    dim: usize,
    times: &[f64],
) -> Result<TanhRateReport> {
    let t_min = times.first().copied().unwrap_or(1.0);
    let family = scan_family(dim, 1.0, DEFAULT_DEGREE, t_min, DEFAULT_SEED)?;
    tanh_rate_check_with(&family, p, q, dim, times)
}

pub fn tanh_rate_check_with(
    family: &TestFamily,
    p: LebesgueExponent,
    q: LebesgueExponent,
    dim: usize,
    times: &[f64],
) -> Result<TanhRateReport> {
    let exponent = 0.5 * dim as f64 * (q.reciprocal() - p.reciprocal()).abs();
    let ratios = scan_ratios(family, 1.0, p, q, times)?;
    let normalized: Vec<f64> = times
        .iter()
        .zip(&ratios)
        .map(|(&t, &r)| r * t.tanh().powf(exponent))
        .collect();
    let sup = normalized.iter().copied().fold(0.0, f64::max);
    let inf = normalized.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(TanhRateReport {
        times: times.to_vec(),
        normalized,
        sup,
        inf,
    })
}

/// `∫ s^{-α/2} η_t(s) ds` for the ½-stable density, by the subordination
/// quadrature, and its closed form `Γ(α/(2β))/(β Γ(α/2))·t^{-α/(2β)}`.
pub fn subordinated_negative_moment(alpha: f64, t: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("moment order must be positive, got {alpha}")));
    }
    let beta = 0.5;
    let quad = SubordinationQuadrature::new(t)?;
    let numeric = quad.negative_moment(alpha / 2.0);
    let exact = libm::tgamma(alpha / (2.0 * beta)) / (beta * libm::tgamma(alpha / 2.0))
        * t.powf(-alpha / (2.0 * beta));
    Ok((numeric, exact))
}
