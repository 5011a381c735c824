use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

use super::solve::{solve, SolveOptions, SolveStatus, SolveTrajectory};
use super::SemilinearProblem;
use crate::error::{Error, Result};
use crate::norms::{log_time_grid, lp_norm, LebesgueExponent};
use crate::propagator::apply_spectral;

/// Default bound on `‖u_0‖_{p_c}`.
pub const DEFAULT_SMALLNESS: f64 = 1e-2;
/// `M = 10ρ`.
const M_FACTOR: f64 = 10.0;
const RHO_SAMPLES: usize = 241;

/// Open window `2β/(dγ(γ−1)) < 1/r < 2β/(d(γ−1))` for the auxiliary
/// exponent `r`.
pub fn r_window(dim: usize, gamma: f64, beta: f64) -> (f64, f64) {
    let d = dim as f64;
    (2.0 * beta / (d * gamma * (gamma - 1.0)), 2.0 * beta / (d * (gamma - 1.0)))
}

#[derive(Debug, Clone)]
pub struct GlobalRunReport {
    pub trajectory: SolveTrajectory,
    pub r: LebesgueExponent,
    /// `δ = 1/(γ−1) − d/(2rβ)`.
    pub delta: f64,
    /// `sup_t t^δ ‖e^{-tH^β}u_0‖_r`, sampled on log-spaced times.
    pub rho: f64,
    pub m_bound: f64,
    /// `sup_t t^δ ‖u(t)‖_r` along the run.
    pub sup_weighted: f64,
}

impl GlobalRunReport {
    pub fn passed(&self) -> bool {
        self.trajectory.status == SolveStatus::Completed && self.sup_weighted <= self.m_bound
    }
}

/// Small-data run at the critical exponent, recording `w(t) = t^δ‖u(t)‖_r`.
pub fn global_smalldata_run(
    prob: &SemilinearProblem,
    r: LebesgueExponent,
    opts: &SolveOptions,
    smallness: f64,
) -> Result<GlobalRunReport> {
    let (dim, gamma, beta) = (prob.dim(), prob.gamma(), prob.beta());
    let pc = prob.critical_exponent();
    if (prob.p().value() - pc).abs() > 1e-12 * pc.max(1.0) {
        return Err(Error::Precondition(format!(
            "global run requires p = p_c = {pc}, got {}",
            prob.p()
        )));
    }
    let (lo, hi) = r_window(dim, gamma, beta);
    let inv_r = r.reciprocal();
    if !(inv_r > lo && inv_r < hi) {
        return Err(Error::Precondition(format!(
            "1/r = {inv_r} outside the open window ({lo}, {hi})"
        )));
    }
    let u0_norm = lp_norm(&prob.u0().synthesize(), prob.p());
    if u0_norm > smallness {
        return Err(Error::Precondition(format!(
            "‖u0‖_(p_c) = {u0_norm:e} exceeds the smallness bound {smallness:e}"
        )));
    }
    let delta = 1.0 / (gamma - 1.0) - dim as f64 / (2.0 * r.value() * beta);

    let times = log_time_grid(1e-6, 10.0 * opts.t_end.max(1.0), RHO_SAMPLES)?;
    let rho = times
        .iter()
        .map(|&t| t.powf(delta) * lp_norm(&apply_spectral(prob.u0(), beta, t).synthesize(), r))
        .fold(0.0, f64::max);
    let m_bound = M_FACTOR * rho;

    let mut opts = opts.clone();
    if !opts.extra_norms.contains(&r) {
        opts.extra_norms.push(r);
    }
    let trajectory = solve(prob, &opts)?;
    let sup_weighted = trajectory
        .times
        .iter()
        .zip(trajectory.extra(r).unwrap_or(&[]))
        .map(|(&t, &n)| if t == 0.0 { 0.0 } else { t.powf(delta) * n })
        .fold(0.0, f64::max);
    Ok(GlobalRunReport {
        trajectory,
        r,
        delta,
        rho,
        m_bound,
        sup_weighted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{build_basis, SpectralField, UniformGrid};
    use crate::Complex;

    fn problem(amp: f64) -> SemilinearProblem {
        let b = build_basis(1, 16, UniformGrid::default_for_degree(1, 16).unwrap()).unwrap();
        let u0 = SpectralField::unit(b, &[0]).unwrap().scaled(Complex::new(amp, 0.0));
        SemilinearProblem::new(1.0, 3.0, LebesgueExponent::Finite(1.0), u0).unwrap()
    }

    #[test]
    fn window_and_delta() {
        let (lo, hi) = r_window(1, 3.0, 1.0);
        assert!((lo - 1.0 / 3.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
        // r = 4: 1/4 < 1/3, rejected
        let opts = SolveOptions::new(1.0, 0.1);
        assert!(matches!(
            global_smalldata_run(&problem(1e-3), LebesgueExponent::Finite(4.0), &opts, DEFAULT_SMALLNESS),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zero_data_is_global() {
        let opts = SolveOptions::new(1.0, 0.1);
        let rep = global_smalldata_run(&problem(0.0), LebesgueExponent::Finite(2.5), &opts, DEFAULT_SMALLNESS)
            .unwrap();
        assert!((rep.delta - 0.3).abs() < 1e-15);
        assert_eq!(rep.sup_weighted, 0.0);
        assert!(rep.passed());
    }

    #[test]
    fn smallness_and_critical_exponent_are_enforced() {
        let opts = SolveOptions::new(1.0, 0.1);
        let r = LebesgueExponent::Finite(2.5);
        assert!(global_smalldata_run(&problem(1.0), r, &opts, DEFAULT_SMALLNESS).is_err());
        let b = build_basis(1, 8, UniformGrid::default_for_degree(1, 8).unwrap()).unwrap();
        let off = SemilinearProblem::new(1.0, 3.0, LebesgueExponent::Finite(2.0), SpectralField::zeros(b)).unwrap();
        assert!(global_smalldata_run(&off, r, &opts, DEFAULT_SMALLNESS).is_err());
    }
}
