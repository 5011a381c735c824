use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::lebesgue::{lp_norm, LebesgueExponent};
use super::profiles::{gaussian_lp_norm, propagated_gaussian_norm};
use crate::error::{Error, Result};
use crate::hermite::{HermiteBasis, SpectralField};
use crate::propagator::PropagatorSpec;
use crate::Complex;

/// Seed of the canonical random member.
pub const DEFAULT_SEED: u64 = 42;
/// Widths of the canonical centered Gaussians.
pub const CANONICAL_WIDTHS: [f64; 3] = [1.0, 0.1, 0.01];

/// One test function for operator-ratio estimates.
#[derive(Debug, Clone)]
pub enum Member {
    /// A band-limited field, propagated by the requested route and measured
    /// on its basis grid.
    Field { label: String, field: SpectralField },
    /// `e^{-|x|²/(2ε)}`, propagated and measured in closed form (the result
    /// is route-independent).
    Gaussian { label: String, eps: f64, dim: usize },
}

impl Member {
    pub fn field(label: impl Into<String>, field: SpectralField) -> Self {
        Member::Field {
            label: label.into(),
            field,
        }
    }

    pub fn gaussian(eps: f64, dim: usize) -> Self {
        Member::Gaussian {
            label: format!("gaussian(eps={eps:e})"),
            eps,
            dim,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Member::Field { label, .. } | Member::Gaussian { label, .. } => label,
        }
    }

    pub fn norm(&self, p: LebesgueExponent) -> f64 {
        match self {
            Member::Field { field, .. } => lp_norm(&field.synthesize(), p),
            Member::Gaussian { eps, dim, .. } => gaussian_lp_norm(*eps, *dim, p),
        }
    }

    pub fn propagated_norm(&self, spec: &PropagatorSpec, q: LebesgueExponent) -> Result<f64> {
        match self {
            Member::Field { field, .. } => Ok(lp_norm(&spec.apply(field)?.synthesize(), q)),
            Member::Gaussian { eps, dim, .. } => {
                propagated_gaussian_norm(*eps, *dim, spec.beta(), spec.t(), q)
            }
        }
    }

    /// `‖e^{-tH^β} f‖_q / ‖f‖_p`; zero for the zero function.
    pub fn ratio(&self, spec: &PropagatorSpec, p: LebesgueExponent, q: LebesgueExponent) -> Result<f64> {
        let den = self.norm(p);
        if den == 0.0 {
            return Ok(0.0);
        }
        Ok(self.propagated_norm(spec, q)? / den)
    }
}

/// A nonempty set of test functions.
#[derive(Debug, Clone)]
pub struct TestFamily {
    members: Vec<Member>,
}

impl TestFamily {
    pub fn new(members: Vec<Member>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition("test family must be nonempty".into()));
        }
        Ok(Self { members })
    }

    /// `{Φ_0, Φ_1, Φ_4, g_1, g_0.1, g_0.01, e^{-|x-2e_1|²/2}, random}`, the
    /// random member having all degrees up to `min(N, 16)` per axis.
    pub fn canonical(basis: Arc<HermiteBasis>, seed: u64) -> Result<Self> {
        let dim = basis.dim();
        if basis.max_degree() < 4 {
            return Err(Error::Precondition(format!(
                "canonical family needs N >= 4, got {}",
                basis.max_degree()
            )));
        }
        let unit = |k: usize| {
            let alpha = [k, 0];
            SpectralField::unit(basis.clone(), &alpha[..dim])
        };
        let mut members = Vec::new();
        for k in [0, 1, 4] {
            members.push(Member::field(format!("phi_{k}"), unit(k)?));
        }
        for eps in CANONICAL_WIDTHS {
            members.push(Member::gaussian(eps, dim));
        }
        let shifted = SpectralField::project_fn(basis.clone(), |x| {
            let r2 = (x[0] - 2.0) * (x[0] - 2.0) + x[1] * x[1];
            Complex::new((-0.5 * r2).exp(), 0.0)
        });
        members.push(Member::field("shifted_gaussian", shifted));
        let band = basis.max_degree().min(16);
        members.push(Member::field(
            format!("random(seed={seed})"),
            SpectralField::random_band_limited(basis, seed, band, true),
        ));
        Self::new(members)
    }

    /// Adds `e^{-|x|²/(2ε)}` for `ε = 10^{-j/4}`, `j = 1, 2, …`, down to
    /// `eps_min`. Fixed widths cannot realize a small-time rate below
    /// `t ~ ε^β`; the ladder keeps concentrating past the smallest scanned
    /// time.
    pub fn with_ladder(mut self, dim: usize, eps_min: f64) -> Self {
        let mut j = 1;
        loop {
            let eps = 10f64.powf(-(j as f64) / 4.0);
            if eps < eps_min * (1.0 - 1e-12) {
                break;
            }
            if !CANONICAL_WIDTHS.iter().any(|w| (w / eps - 1.0).abs() < 1e-12) {
                self.members.push(Member::gaussian(eps, dim));
            }
            j += 1;
        }
        self
    }

    /// Smallest ladder width for a scan starting at `t_min`:
    /// `t_min^{1/β}/100`.
    pub fn ladder_floor(t_min: f64, beta: f64) -> f64 {
        t_min.powf(1.0 / beta) / 100.0
    }

    /// Centered Gaussians only, for concentration-stability studies.
    pub fn gaussians(dim: usize, widths: &[f64]) -> Result<Self> {
        Self::new(widths.iter().map(|&e| Member::gaussian(e, dim)).collect())
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn push(&mut self, member: Member) {
        self.members.push(member);
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
