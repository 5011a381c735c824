//! Space-time `L^q_t L^p_x` norms and empirical evidence for the Strichartz-type
//! bounds
//!
//! ```text
//! ‖e^{-tH^β} f‖_{L^q(I, L^p)} ≤ C ‖f‖_r,
//! ‖∫_0^t e^{-(t-s)H^β} F(s) ds‖_{L^q(I, L^p)} ≤ C ‖F‖_{L^{q₁'}(I, L^{p₁'})}.
//! ```
//!
//! Constants are not asserted here; callers compare sup-ratios across
//! refinements.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermite::{GridField, SpectralField};
use crate::norms::{lp_norm, propagated_gaussian_norm, LebesgueExponent, Member, TestFamily};
use crate::propagator::apply_spectral;
use crate::Complex;

/// Default number of time steps on `[0, T]`.
pub const DEFAULT_TIME_STEPS: usize = 2000;
/// Gaussians of width `ε` are sampled with `Δt ≤ ε/20`.
const GAUSSIAN_STEPS_PER_WIDTH: f64 = 20.0;
const IDENTITY_TOLERANCE: f64 = 1e-12;

/// `(q, p, r)` with `1/q = (d/2β)(1/r − 1/p)`, `p ≥ r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleTriplet {
    dim: usize,
    beta: f64,
    q: LebesgueExponent,
    p: LebesgueExponent,
    r: LebesgueExponent,
}

impl AdmissibleTriplet {
    pub fn new(
        dim: usize,
        beta: f64,
        q: LebesgueExponent,
        p: LebesgueExponent,
        r: LebesgueExponent,
    ) -> Result<Self> {
        crate::hermite::check_dim(dim)?;
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Admissibility(format!("beta must be positive, got {beta}")));
        }
        if p.reciprocal() > r.reciprocal() {
            return Err(Error::Admissibility(format!("need p ≥ r, got p = {p}, r = {r}")));
        }
        let rhs = dim as f64 / (2.0 * beta) * (r.reciprocal() - p.reciprocal());
        if (q.reciprocal() - rhs).abs() > IDENTITY_TOLERANCE {
            return Err(Error::Admissibility(format!(
                "1/q = {} but (d/2β)(1/r − 1/p) = {rhs}",
                q.reciprocal()
            )));
        }
        Ok(Self { dim, beta, q, p, r })
    }

    /// Solves the identity for `q`.
    pub fn from_pr(dim: usize, beta: f64, p: LebesgueExponent, r: LebesgueExponent) -> Result<Self> {
        let inv_q = dim as f64 / (2.0 * beta) * (r.reciprocal() - p.reciprocal());
        let q = LebesgueExponent::from_reciprocal(inv_q)
            .map_err(|_| Error::Admissibility(format!("1/q = {inv_q} is not in [0, 1]")))?;
        Self::new(dim, beta, q, p, r)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn q(&self) -> LebesgueExponent {
        self.q
    }

    pub fn p(&self) -> LebesgueExponent {
        self.p
    }

    pub fn r(&self) -> LebesgueExponent {
        self.r
    }
}

/// Triplets on the lattice `1/p = (1/r)(1 − k/count)`, `k = 1..=count`
/// (the degenerate `p = r`, `q = ∞` is left out); those with `q < 1` are
/// dropped.
pub fn admissible_triplets(dim: usize, beta: f64, r: LebesgueExponent, count: usize) -> Vec<AdmissibleTriplet> {
    let mut out: Vec<AdmissibleTriplet> = Vec::new();
    for k in 1..=count {
        let inv_p = r.reciprocal() * (1.0 - k as f64 / count as f64);
        let Ok(p) = LebesgueExponent::from_reciprocal(inv_p) else {
            continue;
        };
        if let Ok(t) = AdmissibleTriplet::from_pr(dim, beta, p, r) {
            if !out.iter().any(|o| o.p == t.p) {
                out.push(t);
            }
        }
    }
    out
}

/// Trapezoid `(∫ n(t)^q dt)^{1/q}` on uniform samples; the maximum for
/// `q = ∞`.
pub fn spacetime_norm(norms: &[f64], q: LebesgueExponent, dt: f64) -> f64 {
    let peak = norms.iter().fold(0.0, |m: f64, &n| m.max(n));
    let q = match q {
        LebesgueExponent::Infinity => return peak,
        LebesgueExponent::Finite(q) => q,
    };
    if peak == 0.0 || norms.len() < 2 {
        return 0.0;
    }
    let last = norms.len() - 1;
    let sum: f64 = norms
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let w = if j == 0 || j == last { 0.5 } else { 1.0 };
            w * (n / peak).powf(q)
        })
        .sum();
    peak * (dt * sum).powf(1.0 / q)
}

/// [`spacetime_norm`] of `‖u(t_j)‖_p`.
pub fn spacetime_norm_fields(u: &[GridField], q: LebesgueExponent, p: LebesgueExponent, dt: f64) -> f64 {
    let norms: Vec<f64> = u.iter().map(|g| lp_norm(g, p)).collect();
    spacetime_norm(&norms, q, dt)
}

/// `‖e^{-tH^β} f‖_{L^q([0,T], L^p)} / ‖f‖_r` for each member.
pub fn homogeneous_ratios(
    triplet: &AdmissibleTriplet,
    family: &TestFamily,
    t_end: f64,
    steps: usize,
) -> Result<Vec<f64>> {
    if !(t_end.is_finite() && t_end > 0.0) || steps == 0 {
        return Err(Error::Precondition("need T > 0 and at least one time step".into()));
    }
    let AdmissibleTriplet { beta, q, p, r, .. } = *triplet;
    family
        .members()
        .iter()
        .map(|m| {
            let den = m.norm(r);
            if den == 0.0 {
                return Ok(0.0);
            }
            let norms = match m {
                Member::Field { field, .. } => {
                    if field.basis().dim() != triplet.dim {
                        return Err(Error::UnsupportedDimension(field.basis().dim()));
                    }
                    let dt = t_end / steps as f64;
                    (0..=steps)
                        .map(|j| lp_norm(&apply_spectral(field, beta, j as f64 * dt).synthesize(), p))
                        .collect::<Vec<_>>()
                }
                Member::Gaussian { eps, dim, .. } => {
                    let n = steps.max((GAUSSIAN_STEPS_PER_WIDTH * t_end / eps).ceil() as usize);
                    let dt = t_end / n as f64;
                    (0..=n)
                        .map(|j| propagated_gaussian_norm(*eps, *dim, beta, j as f64 * dt, p))
                        .collect::<Result<Vec<_>>>()?
                }
            };
            let dt = t_end / (norms.len() - 1) as f64;
            Ok(spacetime_norm(&norms, q, dt) / den)
        })
        .collect()
}

/// Sup over the family of [`homogeneous_ratios`] with `Δt = T/2000`.
pub fn homogeneous_check(triplet: &AdmissibleTriplet, family: &TestFamily, t_end: f64) -> Result<f64> {
    Ok(homogeneous_ratios(triplet, family, t_end, DEFAULT_TIME_STEPS)?
        .into_iter()
        .fold(0.0, f64::max))
}

/// Exponent pairs `(q, p)`, `(q₁, p₁)` with
/// `1/q₁' + (d/2β)|1/p₁' − 1/p| = 1 + 1/q`, `p₁' ≠ p`, `1 < q₁' < q < ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InhomPair {
    dim: usize,
    beta: f64,
    q: LebesgueExponent,
    p: LebesgueExponent,
    q1: LebesgueExponent,
    p1: LebesgueExponent,
}

impl InhomPair {
    pub fn new(
        dim: usize,
        beta: f64,
        (q, p): (LebesgueExponent, LebesgueExponent),
        (q1, p1): (LebesgueExponent, LebesgueExponent),
    ) -> Result<Self> {
        crate::hermite::check_dim(dim)?;
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Admissibility(format!("beta must be positive, got {beta}")));
        }
        let (q1d, p1d) = (q1.conjugate(), p1.conjugate());
        if (p1d.reciprocal() - p.reciprocal()).abs() <= IDENTITY_TOLERANCE {
            return Err(Error::Admissibility(format!("need p₁' ≠ p, both are {p}")));
        }
        let ordered = match (q1d, q) {
            (LebesgueExponent::Finite(a), LebesgueExponent::Finite(b)) => 1.0 < a && a < b,
            _ => false,
        };
        if !ordered {
            return Err(Error::Admissibility(format!("need 1 < q₁' < q < ∞, got q₁' = {q1d}, q = {q}")));
        }
        let lhs = q1d.reciprocal() + dim as f64 / (2.0 * beta) * (p1d.reciprocal() - p.reciprocal()).abs();
        let rhs = 1.0 + q.reciprocal();
        if (lhs - rhs).abs() > IDENTITY_TOLERANCE {
            return Err(Error::Admissibility(format!(
                "1/q₁' + (d/2β)|1/p₁' − 1/p| = {lhs}, expected 1 + 1/q = {rhs}"
            )));
        }
        Ok(Self { dim, beta, q, p, q1, p1 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn q(&self) -> LebesgueExponent {
        self.q
    }

    pub fn p(&self) -> LebesgueExponent {
        self.p
    }

    pub fn q1(&self) -> LebesgueExponent {
        self.q1
    }

    pub fn p1(&self) -> LebesgueExponent {
        self.p1
    }

    pub fn q1_dual(&self) -> LebesgueExponent {
        self.q1.conjugate()
    }

    pub fn p1_dual(&self) -> LebesgueExponent {
        self.p1.conjugate()
    }
}

/// Separable forcing `F(s) = e^{-rate·s} · profile`.
#[derive(Debug, Clone)]
pub struct Forcing {
    pub profile: SpectralField,
    pub rate: f64,
}

impl Forcing {
    pub fn new(profile: SpectralField, rate: f64) -> Self {
        Self { profile, rate }
    }

    fn at(&self, s: f64) -> SpectralField {
        self.profile.scaled(Complex::new((-self.rate * s).exp(), 0.0))
    }
}

/// Duhamel ratio for one forcing, with the trapezoid recursion
/// `D_{j+1} = E(Δt)(D_j + Δt/2·F_j) + Δt/2·F_{j+1}`, `E(Δt) = e^{-ΔtH^β}`.
pub fn inhomogeneous_ratio(pair: &InhomPair, forcing: &Forcing, t_end: f64, steps: usize) -> Result<f64> {
    if !(t_end.is_finite() && t_end > 0.0) || steps == 0 {
        return Err(Error::Precondition("need T > 0 and at least one time step".into()));
    }
    if forcing.profile.basis().dim() != pair.dim {
        return Err(Error::UnsupportedDimension(forcing.profile.basis().dim()));
    }
    let dt = t_end / steps as f64;
    let profile_norm = lp_norm(&forcing.profile.synthesize(), pair.p1_dual());
    let forcing_norms: Vec<f64> = (0..=steps)
        .map(|j| (-forcing.rate * j as f64 * dt).exp() * profile_norm)
        .collect();
    let den = spacetime_norm(&forcing_norms, pair.q1_dual(), dt);
    if den == 0.0 {
        return Ok(0.0);
    }
    let half = Complex::new(0.5 * dt, 0.0);
    let mut d = SpectralField::zeros(forcing.profile.basis().clone());
    let mut norms = Vec::with_capacity(steps + 1);
    norms.push(0.0);
    let mut f_prev = forcing.at(0.0);
    for j in 1..=steps {
        let f_next = forcing.at(j as f64 * dt);
        d = apply_spectral(&d.axpy(half, &f_prev)?, pair.beta, dt).axpy(half, &f_next)?;
        norms.push(lp_norm(&d.synthesize(), pair.p));
        f_prev = f_next;
    }
    Ok(spacetime_norm(&norms, pair.q, dt) / den)
}

/// Sup over the forcings of [`inhomogeneous_ratio`] with `Δt = T/2000`.
pub fn inhomogeneous_check(pair: &InhomPair, forcings: &[Forcing], t_end: f64) -> Result<f64> {
    forcings.iter().try_fold(0.0, |m: f64, f| {
        Ok(m.max(inhomogeneous_ratio(pair, f, t_end, DEFAULT_TIME_STEPS)?))
    })
}
