//! Closed forms for centered Gaussians `g_ε(x) = e^{-|x|²/(2ε)}` under the
//! fractional propagator.
//!
//! * `β = 1`: `e^{-sH} g_ε` is again a Gaussian. With `A = coth 2s`,
//!   `S = sinh 2s`, `b = 1/ε`, each axis maps to amplitude `1/√(S(A+b))` and
//!   inverse width `(1 + Ab)/(A + b)`.
//! * `β = 1/2`: subordination turns this into a positive mixture of
//!   Gaussians.
//! * other `β`: the Hermite coefficients of `g_ε` are explicit
//!   (`I_0 = π^{-1/4}√(2πε/(1+ε))`,
//!   `I_{k+1} = √(k/(k+1))·(ε−1)/(ε+1)·I_{k−1}`), so the spectral route is
//!   exact up to a mode count chosen from `t` and `ε`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::lebesgue::{lp_norm, LebesgueExponent};
use crate::error::{Error, Result};
use crate::hermite::{build_basis, check_dim, SpectralField, UniformGrid, MAX_DEGREE};
use crate::propagator::{apply_spectral, SubordinationQuadrature};
use crate::quadrature::{integrate_adaptive, GaussLegendre};
use crate::Complex;

/// Multiplier size `e^{-40}` below which modes are dropped.
const MULTIPLIER_CUTOFF: f64 = 40.0;
/// Relative coefficient size below which modes are dropped.
const COEFF_CUTOFF: f64 = 1e-17;

/// `‖g_ε‖_p = (2πε/p)^{d/(2p)}`, and 1 for `p = ∞`.
pub fn gaussian_lp_norm(eps: f64, dim: usize, p: LebesgueExponent) -> f64 {
    match p {
        LebesgueExponent::Infinity => 1.0,
        LebesgueExponent::Finite(p) => (2.0 * PI * eps / p).powf(dim as f64 / (2.0 * p)),
    }
}

/// One-axis image of `g_ε` under `e^{-sH}`: `(amplitude, output ε)`.
pub fn mehler_gaussian(eps: f64, s: f64) -> (f64, f64) {
    if s == 0.0 {
        return (1.0, eps);
    }
    let sh = (2.0 * s).sinh();
    let a = 1.0 / (2.0 * s).tanh();
    let b = 1.0 / eps;
    ((sh * (a + b)).sqrt().recip(), (a + b) / (1.0 + a * b))
}

/// Radial positive combination `Σ_m c_m e^{-|x|²/(2ε_m)}` in `d` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture {
    dim: usize,
    terms: Vec<(f64, f64)>,
}

impl GaussianMixture {
    pub fn new(dim: usize, terms: Vec<(f64, f64)>) -> Result<Self> {
        check_dim(dim)?;
        if terms.iter().any(|&(c, e)| !(c >= 0.0 && e > 0.0)) {
            return Err(Error::Domain("mixture needs nonnegative weights and positive widths".into()));
        }
        Ok(Self { dim, terms })
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn eval_radial(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, e)| c * (-r * r / (2.0 * e)).exp())
            .sum()
    }

    pub fn lp_norm(&self, p: LebesgueExponent) -> f64 {
        let p = match p {
            LebesgueExponent::Infinity => return self.eval_radial(0.0),
            LebesgueExponent::Finite(p) => p,
        };
        match self.terms.as_slice() {
            [] => 0.0,
            [(c, e)] => c * gaussian_lp_norm(*e, self.dim, LebesgueExponent::Finite(p)),
            _ => self.radial_lp_norm(p),
        }
    }

    fn radial_lp_norm(&self, p: f64) -> f64 {
        let peak = self.eval_radial(0.0);
        if peak == 0.0 {
            return 0.0;
        }
        let widest = self.terms.iter().map(|t| t.1).fold(0.0, f64::max);
        let narrowest = self.terms.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
        let rule = GaussLegendre::new(15);
        let dim = self.dim;
        let f = |r: f64| {
            let jac = if dim == 1 { 2.0 } else { 2.0 * PI * r };
            jac * (self.eval_radial(r) / peak).powf(p)
        };
        // Dyadic panels from the narrowest to the widest scale.
        let r_max = (80.0 * widest).sqrt();
        let mut edges = vec![r_max];
        let r_min = 0.05 * narrowest.sqrt();
        while edges.last().copied().unwrap_or(0.0) > r_min {
            let last = edges[edges.len() - 1];
            edges.push(0.5 * last);
        }
        edges.push(0.0);
        edges.reverse();
        let total: f64 = edges
            .windows(2)
            .map(|w| integrate_adaptive(&rule, f, w[0], w[1], 1e-12, 30).value)
            .sum();
        peak * total.powf(1.0 / p)
    }
}

/// `e^{-tH} g_ε` (`β = 1`).
pub fn heat_gaussian(eps: f64, dim: usize, t: f64) -> Result<GaussianMixture> {
    let (a, e) = mehler_gaussian(eps, t);
    GaussianMixture::new(dim, vec![(a.powi(dim as i32), e)])
}

/// `e^{-t√H} g_ε` as the subordinated mixture of `e^{-sH} g_ε`.
pub fn subordinated_gaussian(eps: f64, dim: usize, t: f64) -> Result<GaussianMixture> {
    let quad = SubordinationQuadrature::new(t)?;
    let terms = quad
        .nodes()
        .iter()
        .zip(quad.weights())
        .map(|(&s, &w)| {
            let (a, e) = mehler_gaussian(eps, s);
            (w * a.powi(dim as i32), e)
        })
        .collect();
    GaussianMixture::new(dim, terms)
}

/// One-dimensional Hermite coefficients `⟨g_ε, h_k⟩`, `k < count`.
pub fn gaussian_hermite_coefficients(eps: f64, count: usize) -> Vec<f64> {
    let mut out = vec![0.0; count];
    if count == 0 {
        return out;
    }
    let r = (eps - 1.0) / (eps + 1.0);
    out[0] = PI.powf(-0.25) * (2.0 * PI * eps / (1.0 + eps)).sqrt();
    for k in 1..count.saturating_sub(1) {
        if k % 2 == 1 {
            let kf = k as f64;
            out[k + 1] = (kf / (kf + 1.0)).sqrt() * r * out[k - 1];
        }
    }
    out
}

/// Per-axis degree needed to represent `e^{-tH^β} g_ε`: modes are dropped
/// once the multiplier is below `e^{-40}` or the coefficients below `1e-17`
/// of the leading one.
pub fn gaussian_modes_needed(eps: f64, dim: usize, beta: f64, t: f64) -> usize {
    let by_multiplier = if t > 0.0 {
        let lambda = (MULTIPLIER_CUTOFF / t).powf(1.0 / beta);
        ((lambda - dim as f64) / 2.0).ceil().max(0.0)
    } else {
        f64::INFINITY
    };
    let r = ((eps - 1.0) / (eps + 1.0)).abs();
    let by_coeffs = if r == 0.0 {
        0.0
    } else {
        2.0 * (COEFF_CUTOFF.ln() / r.ln()).ceil()
    };
    let n = by_multiplier.min(by_coeffs).max(4.0);
    if n > 1e6 {
        usize::MAX
    } else {
        n as usize
    }
}

/// `e^{-tH^β} g_ε` through the spectral route with explicit coefficients.
pub fn spectral_gaussian(eps: f64, dim: usize, beta: f64, t: f64) -> Result<SpectralField> {
    let needed = gaussian_modes_needed(eps, dim, beta, t);
    if needed > MAX_DEGREE {
        return Err(Error::ModesExceeded {
            needed,
            cap: MAX_DEGREE,
        });
    }
    // Round up so that nearby (t, ε) share basis sizes.
    let n = needed.div_ceil(8) * 8;
    let n = n.min(MAX_DEGREE);
    let basis = build_basis(dim, n, UniformGrid::default_for_degree(dim, n)?)?;
    let c = gaussian_hermite_coefficients(eps, n + 1);
    let coeffs = match dim {
        1 => c.iter().map(|&v| Complex::new(v, 0.0)).collect(),
        _ => c
            .iter()
            .flat_map(|&a| c.iter().map(move |&b| Complex::new(a * b, 0.0)))
            .collect(),
    };
    let f = SpectralField::new(basis, coeffs)?;
    Ok(apply_spectral(&f, beta, t))
}

/// `‖e^{-tH^β} g_ε‖_q`, by the cheapest exact route for `β`.
pub fn propagated_gaussian_norm(
    eps: f64,
    dim: usize,
    beta: f64,
    t: f64,
    q: LebesgueExponent,
) -> Result<f64> {
    check_dim(dim)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Domain(format!("Gaussian width must be positive, got {eps}")));
    }
    if t == 0.0 {
        return Ok(gaussian_lp_norm(eps, dim, q));
    }
    if beta == 1.0 {
        Ok(heat_gaussian(eps, dim, t)?.lp_norm(q))
    } else if beta == 0.5 {
        Ok(subordinated_gaussian(eps, dim, t)?.lp_norm(q))
    } else {
        Ok(lp_norm(&spectral_gaussian(eps, dim, beta, t)?.synthesize(), q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::apply_subordination;

    fn gaussian(eps: f64) -> impl Fn([f64; 2]) -> Complex {
        move |p| Complex::new((-(p[0] * p[0] + p[1] * p[1]) / (2.0 * eps)).exp(), 0.0)
    }

    #[test]
    fn coefficients_match_quadrature() {
        let b = build_basis(1, 40, UniformGrid::default_for_degree(1, 40).unwrap()).unwrap();
        for eps in [0.3, 1.0, 2.5] {
            let f = SpectralField::project_fn(b.clone(), gaussian(eps));
            let c = gaussian_hermite_coefficients(eps, 41);
            for k in 0..=40 {
                assert!((f.coeffs()[k].re - c[k]).abs() < 1e-12, "eps={eps} k={k}");
            }
        }
    }

    #[test]
    fn heat_closed_form_matches_spectral() {
        let b = build_basis(1, 60, UniformGrid::default_for_degree(1, 60).unwrap()).unwrap();
        let eps = 0.5;
        let t = 0.3;
        let f = SpectralField::project_fn(b.clone(), gaussian(eps));
        let out = apply_spectral(&f, 1.0, t).synthesize();
        let (a, e) = mehler_gaussian(eps, t);
        for (i, v) in out.values().iter().enumerate() {
            let x = out.grid().coordinate(i);
            assert!((v.re - a * (-x * x / (2.0 * e)).exp()).abs() < 1e-12);
        }
        // ground-state width is preserved with amplitude e^{-s}
        let (a, e) = mehler_gaussian(1.0, 0.7);
        assert!((a - (-0.7f64).exp()).abs() < 1e-15 && (e - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mixture_norms_match_grid() {
        let b = build_basis(1, 60, UniformGrid::default_for_degree(1, 60).unwrap()).unwrap();
        let eps = 0.4;
        let t = 0.5;
        let f = SpectralField::project_fn(b, gaussian(eps));
        let grid_out = apply_subordination(&f, t).unwrap().synthesize();
        let mix = subordinated_gaussian(eps, 1, t).unwrap();
        for q in [LebesgueExponent::Finite(1.0), LebesgueExponent::Finite(3.0), LebesgueExponent::Infinity] {
            let a = mix.lp_norm(q);
            let g = lp_norm(&grid_out, q);
            assert!((a / g - 1.0).abs() < 1e-6, "q={q}: {a} vs {g}");
        }
    }

    #[test]
    fn spectral_route_matches_heat_closed_form() {
        for dim in [1, 2] {
            for q in [LebesgueExponent::Finite(2.0), LebesgueExponent::Infinity] {
                let eps = 0.2;
                let t = 0.05;
                let exact = heat_gaussian(eps, dim, t).unwrap().lp_norm(q);
                let field = spectral_gaussian(eps, dim, 1.0, t).unwrap();
                let grid = lp_norm(&field.synthesize(), q);
                assert!((grid / exact - 1.0).abs() < 1e-8, "d={dim} q={q}");
            }
        }
    }

    #[test]
    fn gaussian_norms() {
        assert_eq!(gaussian_lp_norm(0.1, 2, LebesgueExponent::Infinity), 1.0);
        let n1 = gaussian_lp_norm(0.5, 1, LebesgueExponent::Finite(1.0));
        assert!((n1 - PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn too_many_modes() {
        assert!(matches!(
            spectral_gaussian(1e-6, 1, 1.5, 1e-6),
            Err(Error::ModesExceeded { .. })
        ));
    }
}
