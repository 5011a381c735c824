//! The semilinear problem `∂_t u + H^β u = |u|^{γ-1}u`, `u(0) = u_0`, solved
//! through its Duhamel formulation.
//!
//! Each step solves the first-order exponential scheme
//!
//! ```text
//! v = e^{-ΔtH^β} u + φ_1(ΔtH^β) Δt · P 𝒩(v),   φ_1(z) = (1 − e^{-z})/z,
//! ```
//!
//! by Picard iteration, with `𝒩(w) = |w|^{γ-1}w` evaluated pointwise on the
//! uniform grid and projected back by the trapezoid rule. The linear part is
//! applied exactly by the spectral multiplier, so the step size is never
//! limited by the stiffness of `H^β`.

mod global;
mod solve;
mod step;

use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

pub use global::{global_smalldata_run, r_window, GlobalRunReport, DEFAULT_SMALLNESS};
pub use solve::{blowup_rate_check, solve, SolveOptions, SolveStatus, SolveTrajectory};
pub use step::{duhamel_step, duhamel_step_detailed, StepOutcome};

use crate::error::{Error, Result};
use crate::hermite::SpectralField;
use crate::norms::LebesgueExponent;
use crate::Complex;

/// `p_c = d(γ−1)/(2β)`.
pub fn critical_exponent(dim: usize, gamma: f64, beta: f64) -> f64 {
    dim as f64 * (gamma - 1.0) / (2.0 * beta)
}

/// `𝒩(w) = |w|^{γ−1} w`.
pub fn nonlinearity(w: Complex, gamma: f64) -> Complex {
    let m = w.norm();
    if m == 0.0 {
        Complex::new(0.0, 0.0)
    } else {
        w * m.powf(gamma - 1.0)
    }
}

#[derive(Debug, Clone)]
pub struct SemilinearProblem {
    beta: f64,
    gamma: f64,
    p: LebesgueExponent,
    u0: SpectralField,
    nonlinear: bool,
}

impl SemilinearProblem {
    pub fn new(beta: f64, gamma: f64, p: LebesgueExponent, u0: SpectralField) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Precondition(format!("beta must be positive, got {beta}")));
        }
        if !(gamma.is_finite() && gamma > 1.0) {
            return Err(Error::Precondition(format!("gamma must exceed 1, got {gamma}")));
        }
        Ok(Self {
            beta,
            gamma,
            p,
            u0,
            nonlinear: true,
        })
    }

    /// Switches the source term off (or back on); with it off the solver
    /// reduces to the linear propagator.
    pub fn with_nonlinearity(mut self, on: bool) -> Self {
        self.nonlinear = on;
        self
    }

    pub fn dim(&self) -> usize {
        self.u0.basis().dim()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn p(&self) -> LebesgueExponent {
        self.p
    }

    pub fn u0(&self) -> &SpectralField {
        &self.u0
    }

    pub fn is_nonlinear(&self) -> bool {
        self.nonlinear
    }

    pub fn critical_exponent(&self) -> f64 {
        critical_exponent(self.dim(), self.gamma, self.beta)
    }

    /// Exponent of the weight `t^{d(γ−1)/(2pγβ)}` paired with `‖u(t)‖_{pγ}`.
    pub fn weight_exponent(&self) -> f64 {
        self.dim() as f64 * (self.gamma - 1.0) * self.p.reciprocal() / (2.0 * self.gamma * self.beta)
    }

    /// The exponent `pγ` of the weighted norm.
    pub fn weighted_exponent(&self) -> LebesgueExponent {
        match self.p {
            LebesgueExponent::Finite(p) => LebesgueExponent::Finite(p * self.gamma),
            LebesgueExponent::Infinity => LebesgueExponent::Infinity,
        }
    }

    /// Lower blow-up rate exponent `d/(2pβ) − 1/(γ−1)`.
    pub fn blowup_exponent(&self) -> f64 {
        self.dim() as f64 * self.p.reciprocal() / (2.0 * self.beta) - 1.0 / (self.gamma - 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{build_basis, UniformGrid};
    use proptest::prelude::*;

    #[test]
    fn critical_exponents() {
        assert_eq!(critical_exponent(1, 3.0, 1.0), 1.0);
        assert_eq!(critical_exponent(2, 2.0, 0.5), 2.0);
        assert_eq!(critical_exponent(1, 5.0, 2.0), 1.0);
    }

    #[test]
    fn problem_exponents() {
        let b = build_basis(1, 4, UniformGrid::default_for_degree(1, 4).unwrap()).unwrap();
        let u0 = SpectralField::zeros(b);
        let prob = SemilinearProblem::new(1.0, 3.0, LebesgueExponent::Finite(4.0), u0.clone()).unwrap();
        assert!((prob.blowup_exponent() + 0.375).abs() < 1e-15);
        assert!((prob.weight_exponent() - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(prob.weighted_exponent(), LebesgueExponent::Finite(12.0));
        assert!(SemilinearProblem::new(1.0, 0.5, LebesgueExponent::Finite(2.0), u0).is_err());
    }

    fn complex_in_unit_disk() -> impl Strategy<Value = Complex> {
        (0.0..1.0f64, 0.0..core::f64::consts::TAU).prop_map(|(r, a)| Complex::from_polar(r, a))
    }

    proptest! {
        // ||u|^{γ−1}u − |v|^{γ−1}v| ≤ γ(|u|^{γ−1} + |v|^{γ−1})|u − v| pointwise,
        // hence also for grid sups.
        #[test]
        fn nonlinearity_is_locally_lipschitz(
            u in prop::collection::vec(complex_in_unit_disk(), 1..64),
            v in prop::collection::vec(complex_in_unit_disk(), 1..64),
            gamma in 1.01..5.0f64,
        ) {
            let n = u.len().min(v.len());
            let sup = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0, f64::max);
            let lhs = sup(&mut (0..n).map(|i| (nonlinearity(u[i], gamma) - nonlinearity(v[i], gamma)).norm()));
            let su = sup(&mut u[..n].iter().map(|z| z.norm()));
            let sv = sup(&mut v[..n].iter().map(|z| z.norm()));
            let sd = sup(&mut (0..n).map(|i| (u[i] - v[i]).norm()));
            prop_assert!(lhs <= gamma * (su.powf(gamma - 1.0) + sv.powf(gamma - 1.0)) * sd + 1e-15);
        }
    }
}
