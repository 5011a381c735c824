//! Bochner subordination for `β = 1/2`:
//! `e^{-t√H} = ∫_0^∞ e^{-sH} η_t(s) ds` with the ½-stable density
//! `η_t(s) = t/(2√π) · s^{-3/2} · e^{-t²/(4s)}`.
//!
//! Other `β ∈ (0, 1)` have no closed-form density and are served by the
//! spectral route only.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermite::SpectralField;

/// Tail mass tolerance of the quadrature.
pub const TAIL_EPSILON: f64 = 1e-10;
/// Number of log-spaced nodes.
pub const NODES: usize = 400;
/// Largest admissible deviation of the discrete total mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-8;

/// The ½-stable subordinator density at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubordinatorDensity {
    t: f64,
}

pub fn subordinator_density_half(t: f64) -> Result<SubordinatorDensity> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("subordinator time must be positive, got {t}")));
    }
    Ok(SubordinatorDensity { t })
}

impl SubordinatorDensity {
    pub fn beta(&self) -> f64 {
        0.5
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn eval(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let t = self.t;
        t / (2.0 * PI.sqrt()) * s.powf(-1.5) * (-t * t / (4.0 * s)).exp()
    }

    /// Maximizer `t²/6` of the density.
    pub fn mode(&self) -> f64 {
        self.t * self.t / 6.0
    }

    /// Integration range `[s_min, s_max]`: `η_t` is below `ε`-relative size
    /// left of `s_min` and has tail mass `ε` right of `s_max`.
    pub fn support(&self, eps: f64) -> (f64, f64) {
        let t2 = self.t * self.t;
        (t2 / (4.0 * (1.0 / eps).ln()), t2 / (PI * eps * eps))
    }
}

/// Trapezoid rule in `v = ln s` over the density's effective support; the
/// stored weights already include `η_t(s_m)` and the Jacobian `s_m`.
#[derive(Debug, Clone)]
pub struct SubordinationQuadrature {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    mass_residual: f64,
}

impl SubordinationQuadrature {
    pub fn new(t: f64) -> Result<Self> {
        Self::with_nodes(t, NODES)
    }

    pub fn with_nodes(t: f64, count: usize) -> Result<Self> {
        let density = subordinator_density_half(t)?;
        if count < 2 {
            return Err(Error::Domain("subordination quadrature needs two nodes".into()));
        }
        let (s_min, s_max) = density.support(TAIL_EPSILON);
        let (v0, v1) = (s_min.ln(), s_max.ln());
        let dv = (v1 - v0) / (count - 1) as f64;
        let mut nodes = Vec::with_capacity(count);
        let mut weights = Vec::with_capacity(count);
        for m in 0..count {
            let s = (v0 + m as f64 * dv).exp();
            let end = if m == 0 || m == count - 1 { 0.5 } else { 1.0 };
            nodes.push(s);
            weights.push(end * dv * s * density.eval(s));
        }
        let mass: f64 = weights.iter().sum();
        let mass_residual = (mass - 1.0).abs();
        if mass_residual > MASS_TOLERANCE {
            return Err(Error::Convergence {
                residual: mass_residual,
            });
        }
        Ok(Self {
            nodes,
            weights,
            mass_residual,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `|Σ_m W_m − 1|`.
    pub fn mass_residual(&self) -> f64 {
        self.mass_residual
    }

    /// `∫ e^{-us} η_t(s) ds`, which should equal `e^{-t√u}`.
    pub fn laplace(&self, u: f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * (-u * s).exp())
            .sum()
    }

    /// `∫ s^{-a} η_t(s) ds`.
    pub fn negative_moment(&self, a: f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * s.powf(-a))
            .sum()
    }
}

/// `e^{-t√H} f` as the subordinated average of `e^{-sH} f`. The average is
/// linear, so it is taken on the multiplier: every eigenvalue `λ` is scaled by
/// `Σ_m W_m e^{-s_m λ}`, summed in a fixed order.
pub fn apply_subordination(f: &SpectralField, t: f64) -> Result<SpectralField> {
    let quad = SubordinationQuadrature::new(t)?;
    Ok(f.apply_multiplier(|e| quad.laplace(e.value)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{build_basis, UniformGrid};
    use crate::propagator::apply_spectral;
    use crate::Complex;

    #[test]
    fn density_shape() {
        let d = subordinator_density_half(1.0).unwrap();
        assert_eq!(d.eval(0.0), 0.0);
        assert_eq!(d.eval(-1.0), 0.0);
        // dense scan for the maximizer
        let (mut best, mut arg) = (0.0, 0.0);
        for i in 1..20000 {
            let s = i as f64 * 1e-4;
            if d.eval(s) > best {
                best = d.eval(s);
                arg = s;
            }
        }
        assert!((arg - 1.0 / 6.0).abs() < 1e-4);
        assert!((d.mode() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn laplace_identity() {
        let q = SubordinationQuadrature::new(1.0).unwrap();
        assert!((q.laplace(0.0) - 1.0).abs() < 1e-8);
        assert!((q.laplace(1.0) - (-1.0f64).exp()).abs() < 1e-8);
        assert!(q.mass_residual() < 1e-8);
    }

    #[test]
    fn too_few_nodes_fail_to_converge() {
        assert!(matches!(
            SubordinationQuadrature::with_nodes(1.0, 20),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn matches_spectral_route() {
        let b = build_basis(1, 8, UniformGrid::default_for_degree(1, 8).unwrap()).unwrap();
        let phi4 = SpectralField::unit(b.clone(), &[4]).unwrap();
        let g = apply_subordination(&phi4, 0.7).unwrap();
        let c = g.coeff(&[4]).unwrap().re;
        assert!((c / (-2.1f64).exp() - 1.0).abs() < 1e-4);

        let mixed = SpectralField::unit(b.clone(), &[0])
            .unwrap()
            .axpy(Complex::new(1.0, 0.0), &SpectralField::unit(b, &[2]).unwrap())
            .unwrap();
        let sub = apply_subordination(&mixed, 1.0).unwrap();
        let spec = apply_spectral(&mixed, 0.5, 1.0);
        assert!(sub.max_abs_diff(&spec).unwrap() < 1e-4 * spec.l2_norm());
        assert!((sub.coeff(&[0]).unwrap().re - (-1.0f64).exp()).abs() < 1e-8);
    }
}
