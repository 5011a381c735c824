//! The Macdonald function
//! `K_ν(z) = 2^{-ν-1} z^ν ∫_0^∞ e^{-y - z²/(4y)} y^{-ν-1} dy`.
//!
//! With `y = e^v` the integrand becomes `e^{φ(v)}`,
//! `φ(v) = -e^v - (z²/4)e^{-v} - νv`, which is strictly concave. The integral
//! is taken relative to the peak value `φ* = max φ` over a range where
//! `φ - φ* ≥ -40`, split at the peak and at `v = ln(z/2)` (the saddle `y = z/2`
//! of the `ν = 0` integrand), and the result is assembled in log form.

use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, GaussLegendre};

pub const MAX_ORDER: f64 = 20.0;
pub const MAX_ARGUMENT: f64 = 100.0;

const DEFAULT_NODES: usize = 15;
const LOG_CUTOFF: f64 = 40.0;
const REL_TOL: f64 = 1e-14;
const MAX_DEPTH: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacdonaldParams {
    pub nu: f64,
    pub z: f64,
}

impl MacdonaldParams {
    pub fn new(nu: f64, z: f64) -> Result<Self> {
        if !(nu.is_finite() && nu.abs() <= MAX_ORDER) {
            return Err(Error::Domain(format!("order {nu} outside [-20, 20]")));
        }
        if !(z > 0.0 && z <= MAX_ARGUMENT) {
            return Err(Error::Domain(format!("argument {z} outside (0, 100]")));
        }
        Ok(Self { nu, z })
    }

    pub fn value(&self) -> Result<f64> {
        macdonald_k(self.nu, self.z)
    }
}

pub fn macdonald_k(nu: f64, z: f64) -> Result<f64> {
    macdonald_k_with_nodes(nu, z, DEFAULT_NODES)
}

/// `ln K_ν(z)`; finite wherever the parameters are in range.
pub fn ln_macdonald_k(nu: f64, z: f64) -> Result<f64> {
    ln_macdonald_with_rule(nu, z, &GaussLegendre::new(DEFAULT_NODES))
}

/// [`macdonald_k`] driven by a Gauss–Legendre rule with `nodes` points per
/// panel.
pub fn macdonald_k_with_nodes(nu: f64, z: f64, nodes: usize) -> Result<f64> {
    let ln_k = ln_macdonald_with_rule(nu, z, &GaussLegendre::new(nodes.max(1)))?;
    if ln_k > f64::MAX.ln() {
        return Err(Error::Domain(format!("K_{nu}({z}) overflows double precision")));
    }
    Ok(ln_k.exp())
}

fn ln_macdonald_with_rule(nu: f64, z: f64, rule: &GaussLegendre) -> Result<f64> {
    MacdonaldParams::new(nu, z)?;
    // z²/4 is carried as a logarithm so that tiny z cannot underflow.
    let ln_q = 2.0 * z.ln() - 4f64.ln();
    let phi = |v: f64| -v.exp() - (ln_q - v).exp() - nu * v;
    // e^{v*} solves e^{2v} + ν e^v − z²/4 = 0; avoid cancellation for ν > 0.
    let root = nu.hypot(z);
    let v_star = if nu > 0.0 {
        ln_q + 2f64.ln() - (nu + root).ln()
    } else {
        (0.5 * (root - nu)).ln()
    };
    let phi_star = phi(v_star);
    let reach = |dir: f64| {
        let mut step = 1.0;
        while phi(v_star + dir * step) - phi_star > -LOG_CUTOFF {
            step *= 2.0;
        }
        v_star + dir * step
    };
    let (lo, hi) = (reach(-1.0), reach(1.0));
    let saddle = (0.5 * z).ln().clamp(lo, hi);
    let (a, b) = if saddle < v_star {
        (saddle, v_star)
    } else {
        (v_star, saddle)
    };
    let f = |v: f64| (phi(v) - phi_star).exp();
    let mut total = 0.0;
    for (x0, x1) in [(lo, a), (a, b), (b, hi)] {
        if x1 > x0 {
            total += integrate_adaptive(rule, f, x0, x1, REL_TOL, MAX_DEPTH).value;
        }
    }
    Ok(-(nu + 1.0) * 2f64.ln() + nu * z.ln() + phi_star + total.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn half_order_closed_form() {
        let k = macdonald_k(0.5, 2.0).unwrap();
        let exact = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!((k / exact - 1.0).abs() < 1e-10);
    }

    #[test]
    fn symmetry_in_order() {
        for nu in [0.3, 0.7, 1.5, 7.25] {
            for z in [0.5, 1.0, 1.5, 5.0] {
                let a = macdonald_k(nu, z).unwrap();
                let b = macdonald_k(-nu, z).unwrap();
                assert!((a / b - 1.0).abs() < 1e-8, "nu={nu} z={z}");
            }
        }
    }

    #[test]
    fn small_argument_limit() {
        for nu in [0.5, 1.0, 1.5] {
            let z: f64 = 1e-4;
            let lhs = z.powf(nu) * macdonald_k(nu, z).unwrap();
            let rhs = 2f64.powf(nu - 1.0) * libm::tgamma(nu);
            assert!((lhs - rhs).abs() < 1e-3, "nu={nu}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn exponential_decay_normalized() {
        for nu in [0.3, 0.7, 1.5] {
            for i in 0..=45 {
                let z = 5.0 + i as f64;
                let v = macdonald_k(nu, z).unwrap() * z.exp() * z.sqrt();
                assert!(v > 1.0 && v < 2.0, "nu={nu} z={z} v={v}");
            }
        }
    }

    #[test]
    fn refinement_is_converged() {
        for (nu, z) in [(0.0, 0.01), (3.5, 0.2), (-12.0, 40.0), (20.0, 100.0)] {
            let a = macdonald_k_with_nodes(nu, z, 15).unwrap();
            let b = macdonald_k_with_nodes(nu, z, 30).unwrap();
            assert!((a / b - 1.0).abs() < 1e-9, "nu={nu} z={z}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(macdonald_k(21.0, 1.0).is_err());
        assert!(macdonald_k(1.0, 0.0).is_err());
        assert!(macdonald_k(1.0, 101.0).is_err());
        assert!(ln_macdonald_k(20.0, 1e-300).unwrap().is_finite());
    }
}
