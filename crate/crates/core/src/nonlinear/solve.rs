use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::step::{duhamel_step_detailed, StepOutcome};
use super::SemilinearProblem;
use crate::error::{Error, Result};
use crate::hermite::SpectralField;
use crate::norms::{fit_line, lp_norm, LebesgueExponent};

/// Steps whose contraction factor exceeds this are rejected.
const REJECT_FACTOR: f64 = 0.5;
const HALVE_FACTOR: f64 = 0.25;
const GROW_FACTOR: f64 = 0.05;
/// Samples required in the blow-up fit window.
const MIN_BLOWUP_SAMPLES: usize = 10;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub t_end: f64,
    /// Nominal (and largest) step.
    pub dt: f64,
    pub blowup_threshold: f64,
    pub picard_tol: f64,
    pub picard_max: usize,
    pub dt_min: f64,
    /// Additional norms recorded at every output time.
    pub extra_norms: Vec<LebesgueExponent>,
    pub keep_states: bool,
}

impl SolveOptions {
    pub fn new(t_end: f64, dt: f64) -> Self {
        Self {
            t_end,
            dt,
            blowup_threshold: 1e8,
            picard_tol: 1e-12,
            picard_max: 60,
            dt_min: 1e-8,
            extra_norms: Vec::new(),
            keep_states: false,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.into()));
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad("t_end must be positive");
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt must be positive");
        }
        if !(self.blowup_threshold >= 1e3) {
            return bad("blow-up threshold must be at least 1e3");
        }
        if !(self.dt_min > 0.0 && self.dt_min <= self.dt) {
            return bad("dt_min must lie in (0, dt]");
        }
        if !(self.picard_tol > 0.0) || self.picard_max < 2 {
            return bad("Picard tolerance must be positive and at least two iterations allowed");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveStatus {
    Completed,
    BlewUp { t_est: f64 },
    ToleranceFailure,
}

impl SolveStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::Completed => "completed",
            SolveStatus::BlewUp { .. } => "blew_up",
            SolveStatus::ToleranceFailure => "tolerance_failure",
        }
    }

    pub fn t_est(&self) -> Option<f64> {
        match self {
            SolveStatus::BlewUp { t_est } => Some(*t_est),
            _ => None,
        }
    }
}

/// Output of [`solve`], one row per accepted step (starting at `t = 0`).
#[derive(Debug, Clone)]
pub struct SolveTrajectory {
    pub times: Vec<f64>,
    pub lp_norms: Vec<f64>,
    /// `t^{d(γ−1)/(2pγβ)}‖u(t)‖_{pγ}`.
    pub weighted_norms: Vec<f64>,
    pub picard_contraction_factors: Vec<f64>,
    pub extra_norms: Vec<(LebesgueExponent, Vec<f64>)>,
    pub states: Vec<SpectralField>,
    pub status: SolveStatus,
}

impl SolveTrajectory {
    pub fn extra(&self, q: LebesgueExponent) -> Option<&[f64]> {
        self.extra_norms
            .iter()
            .find(|(e, _)| *e == q)
            .map(|(_, v)| v.as_slice())
    }

    pub fn final_norm(&self) -> f64 {
        self.lp_norms.last().copied().unwrap_or(0.0)
    }

    fn record(&mut self, prob: &SemilinearProblem, opts: &SolveOptions, t: f64, out: &StepOutcome) {
        self.times.push(t);
        self.lp_norms.push(lp_norm(&out.grid, prob.p()));
        let w = if t == 0.0 { 0.0 } else { t.powf(prob.weight_exponent()) };
        self.weighted_norms.push(w * lp_norm(&out.grid, prob.weighted_exponent()));
        self.picard_contraction_factors.push(out.contraction_factor);
        for (q, v) in self.extra_norms.iter_mut() {
            v.push(lp_norm(&out.grid, *q));
        }
        if opts.keep_states {
            self.states.push(out.state.clone());
        }
    }
}

/// Marches [`duhamel_step`](super::duhamel_step) from `t = 0` to `t_end` with
/// step control on the Picard contraction factor `κ`: steps with `κ > 0.5`
/// (or failed iterations) are retried at half the size, `κ > 0.25` halves the
/// next step and `κ < 0.05` doubles it up to the nominal `dt`.
///
/// Blow-up is declared when `‖u‖_p` passes the threshold, or when a step
/// would drop below `dt_min` while Picard has stopped contracting
/// (`κ ≥ 0.5`); `T_est` is then the last time plus the largest step from
/// the last state that still contracts.
pub fn solve(prob: &SemilinearProblem, opts: &SolveOptions) -> Result<SolveTrajectory> {
    opts.validate()?;
    let mut traj = SolveTrajectory {
        times: Vec::new(),
        lp_norms: Vec::new(),
        weighted_norms: Vec::new(),
        picard_contraction_factors: Vec::new(),
        extra_norms: opts.extra_norms.iter().map(|&q| (q, Vec::new())).collect(),
        states: Vec::new(),
        status: SolveStatus::Completed,
    };
    let mut u = prob.u0().clone();
    let start = StepOutcome {
        grid: u.synthesize(),
        state: u.clone(),
        contraction_factor: 0.0,
        iterations: 0,
    };
    traj.record(prob, opts, 0.0, &start);

    let mut t = 0.0;
    let mut h = opts.dt;
    let end_slack = 1e-12 * opts.t_end;
    while opts.t_end - t > end_slack {
        let step = h.min(opts.t_end - t);
        let attempt = duhamel_step_detailed(&u, prob, t, step, opts.picard_tol, opts.picard_max);
        let factor = match &attempt {
            Ok(out) => out.contraction_factor,
            Err(Error::PicardNonConvergence { factor, .. }) => *factor,
            Err(e) => return Err(e.clone()),
        };
        match attempt {
            Ok(out) if factor <= REJECT_FACTOR => {
                t += step;
                traj.record(prob, opts, t, &out);
                u = out.state;
                let norm = traj.final_norm();
                if !(norm <= opts.blowup_threshold) {
                    let t_est = t + largest_contracting_step(&u, prob, opts, t, step);
                    traj.status = SolveStatus::BlewUp { t_est };
                    return Ok(traj);
                }
                if factor > HALVE_FACTOR {
                    h = (0.5 * step).max(opts.dt_min);
                } else if factor < GROW_FACTOR {
                    h = (2.0 * h).min(opts.dt);
                }
            }
            _ => {
                if step <= opts.dt_min {
                    traj.status = if factor >= REJECT_FACTOR {
                        let t_est = t + largest_contracting_step(&u, prob, opts, t, step);
                        SolveStatus::BlewUp { t_est }
                    } else {
                        SolveStatus::ToleranceFailure
                    };
                    return Ok(traj);
                }
                h = (0.5 * step).max(opts.dt_min);
            }
        }
    }
    Ok(traj)
}

fn contracts(u: &SpectralField, prob: &SemilinearProblem, opts: &SolveOptions, t: f64, h: f64) -> bool {
    matches!(
        duhamel_step_detailed(u, prob, t, h, opts.picard_tol, opts.picard_max),
        Ok(out) if out.contraction_factor <= REJECT_FACTOR
    )
}

/// Doubles from `dt_min` while steps contract, then bisects the bracket to
/// `min(1e-6, 1e-3·h)`.
fn largest_contracting_step(
    u: &SpectralField,
    prob: &SemilinearProblem,
    opts: &SolveOptions,
    t: f64,
    hint: f64,
) -> f64 {
    let mut good = 0.0;
    let mut bad = opts.dt_min;
    if !contracts(u, prob, opts, t, bad) {
        // already past dt_min: the last state is stable, so some smaller step
        // still contracts
        let mut h = bad;
        for _ in 0..64 {
            h *= 0.5;
            if contracts(u, prob, opts, t, h) {
                return h;
            }
        }
        return h;
    }
    while contracts(u, prob, opts, t, bad) {
        good = bad;
        bad *= 2.0;
        if bad > 4.0 * hint.max(opts.dt) {
            return good;
        }
    }
    while bad - good > 1e-6f64.min(1e-3 * good.max(opts.dt_min)) {
        let mid = 0.5 * (good + bad);
        if contracts(u, prob, opts, t, mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Slope of `ln ‖u(t)‖_p` against `ln(T_est − t)` over samples with
/// `T_est − t ∈ [20τ, 200τ]`, `τ = T_est − t_last`.
pub fn blowup_rate_check(traj: &SolveTrajectory, _prob: &SemilinearProblem) -> Result<f64> {
    let t_est = traj.status.t_est().ok_or_else(|| {
        Error::Precondition("blow-up rate needs a trajectory that blew up".into())
    })?;
    let t_last = traj.times.last().copied().unwrap_or(0.0);
    let tau = t_est - t_last;
    if !(tau > 0.0) {
        return Err(Error::Fit {
            regime: "blow-up",
            points: 0,
            required: MIN_BLOWUP_SAMPLES,
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = traj
        .times
        .iter()
        .zip(&traj.lp_norms)
        .filter(|(t, n)| {
            let d = t_est - **t;
            d >= 20.0 * tau && d <= 200.0 * tau && **n > 0.0
        })
        .map(|(t, n)| ((t_est - t).ln(), n.ln()))
        .unzip();
    Ok(fit_line(&xs, &ys, "blow-up", MIN_BLOWUP_SAMPLES)?.slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{build_basis, UniformGrid};
    use crate::propagator::apply_spectral;
    use crate::Complex;

    fn problem(amp: f64, n: usize) -> SemilinearProblem {
        let b = build_basis(1, n, UniformGrid::default_for_degree(1, n).unwrap()).unwrap();
        let u0 = SpectralField::unit(b, &[0]).unwrap().scaled(Complex::new(amp, 0.0));
        SemilinearProblem::new(1.0, 3.0, LebesgueExponent::Finite(4.0), u0).unwrap()
    }

    #[test]
    fn zero_data_stays_zero() {
        let prob = problem(0.0, 8);
        let traj = solve(&prob, &SolveOptions::new(1.0, 0.1)).unwrap();
        assert_eq!(traj.status, SolveStatus::Completed);
        assert!(traj.lp_norms.iter().all(|n| *n == 0.0));
        assert_eq!(traj.times.len(), 11);
    }

    #[test]
    fn linear_mode_tracks_the_propagator() {
        let b = build_basis(1, 16, UniformGrid::default_for_degree(1, 16).unwrap()).unwrap();
        let u0 = SpectralField::random_band_limited(b, 9, 16, false);
        let prob = SemilinearProblem::new(1.0, 3.0, LebesgueExponent::Finite(2.0), u0.clone())
            .unwrap()
            .with_nonlinearity(false);
        let mut opts = SolveOptions::new(2.0, 0.05);
        opts.keep_states = true;
        let traj = solve(&prob, &opts).unwrap();
        for (t, s) in traj.times.iter().zip(&traj.states) {
            let exact = apply_spectral(&u0, 1.0, *t);
            assert!(s.max_abs_diff(&exact).unwrap() < 1e-10);
        }
    }

    #[test]
    fn large_data_blows_up_near_the_ode_time() {
        let prob = problem(10.0, 24);
        let traj = solve(&prob, &SolveOptions::new(1.0, 1e-4)).unwrap();
        let t_est = traj.status.t_est().expect("blow-up");
        assert!(t_est > *traj.times.last().unwrap());
        // The flat comparison y' = −y + y³, y(0) = 10π^{-1/4}, blows up at
        // ½ ln(y0²/(y0²−1)); diffusion can only delay the PDE.
        let y0 = 10.0 * core::f64::consts::PI.powf(-0.25);
        let t_ode = 0.5 * (y0 * y0 / (y0 * y0 - 1.0)).ln();
        assert!(t_est > t_ode && t_est < 10.0 * t_ode, "T_est={t_est} ode={t_ode}");
        let rate = blowup_rate_check(&traj, &prob).unwrap();
        assert!(rate <= prob.blowup_exponent() + 0.1, "rate {rate}");
    }

    #[test]
    fn rate_check_requires_blow_up() {
        let prob = problem(0.0, 4);
        let traj = solve(&prob, &SolveOptions::new(0.1, 0.05)).unwrap();
        assert!(blowup_rate_check(&traj, &prob).is_err());
    }
}
