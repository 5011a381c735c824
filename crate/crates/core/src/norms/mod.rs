//! Lebesgue norms on the uniform grid and empirical `L^p → L^q` decay of the
//! fractional propagator.

mod family;
mod fit;
mod lebesgue;
mod profiles;
mod scan;

pub use family::{Member, TestFamily, CANONICAL_WIDTHS, DEFAULT_SEED};
pub use fit::{fit_line, LineFit};
pub use lebesgue::{lp_norm, lp_norm_moduli, lp_norm_values, LebesgueExponent};
pub use profiles::{
    gaussian_hermite_coefficients, gaussian_lp_norm, gaussian_modes_needed, heat_gaussian,
    mehler_gaussian, propagated_gaussian_norm, spectral_gaussian, subordinated_gaussian,
    GaussianMixture,
};
pub use scan::{
    c_star, decay_scan, fit_large_t, fit_small_t, log_time_grid, operator_ratio, scan_family,
    scan_ratios, sigma_beta, subordinated_negative_moment, tanh_rate_check, tanh_rate_check_with,
    DecayScanResult, TanhRateReport, DEFAULT_DEGREE, LARGE_T_MIN, MIN_FIT_POINTS, SMALL_T_MAX,
};
