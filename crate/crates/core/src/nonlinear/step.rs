use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{nonlinearity, SemilinearProblem};
use crate::error::{Error, Result};
use crate::hermite::{project, GridField, SpectralField};
use crate::propagator::apply_spectral;

/// Differences below this multiple of `ε·sup|v|` count as converged noise.
const NOISE_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Result of one Duhamel step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub state: SpectralField,
    /// `state` synthesized on the basis grid.
    pub grid: GridField,
    /// Ratio `d_1/d_0` of the first two successive Picard differences
    /// (grid sup norm); `0` when the first difference vanishes.
    pub contraction_factor: f64,
    pub iterations: usize,
}

/// Advances `u` from `t0` to `t0 + dt`; returns the new state and the
/// measured contraction factor.
pub fn duhamel_step(
    u: &SpectralField,
    prob: &SemilinearProblem,
    t0: f64,
    dt: f64,
    picard_tol: f64,
    picard_max: usize,
) -> Result<(SpectralField, f64)> {
    let out = duhamel_step_detailed(u, prob, t0, dt, picard_tol, picard_max)?;
    Ok((out.state, out.contraction_factor))
}

/// [`duhamel_step`] with the grid samples and iteration count. The scheme is
/// autonomous, so `t0` only labels the step.
pub fn duhamel_step_detailed(
    u: &SpectralField,
    prob: &SemilinearProblem,
    _t0: f64,
    dt: f64,
    picard_tol: f64,
    picard_max: usize,
) -> Result<StepOutcome> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Precondition("time step must be positive".into()));
    }
    u.check_same_basis(prob.u0())?;
    let beta = prob.beta();
    let linear = apply_spectral(u, beta, dt);
    if !prob.is_nonlinear() {
        let grid = linear.synthesize();
        return Ok(StepOutcome {
            state: linear,
            grid,
            contraction_factor: 0.0,
            iterations: 0,
        });
    }

    let gamma = prob.gamma();
    let basis = u.basis().clone();
    // φ_1(Δt λ^β)·Δt = (1 − e^{−Δt λ^β})/λ^β
    let forcing = |g: &GridField| -> Result<SpectralField> {
        let values: Vec<_> = g.values().iter().map(|&w| nonlinearity(w, gamma)).collect();
        let n = project(&GridField::new(*g.grid(), values).map_err(non_finite)?, basis.clone())?;
        Ok(n.apply_multiplier(|e| {
            let lb = e.value.powf(beta);
            -(-dt * lb).exp_m1() / lb
        }))
    };
    let map = |g: &GridField| -> Result<SpectralField> { linear.axpy(one(), &forcing(g)?) };

    let mut grid = u.synthesize();
    let mut state = map(&grid)?;
    let mut next_grid = state.synthesize();
    let mut first: Option<f64> = None;
    let mut factor = 0.0;
    let mut prev_diff = f64::INFINITY;
    for k in 0..picard_max.max(2) {
        grid = next_grid;
        state = map(&grid)?;
        next_grid = state.synthesize();
        let diff = next_grid.max_abs_diff(&grid)?;
        let scale = next_grid.max_abs();
        if !diff.is_finite() || !scale.is_finite() {
            return Err(Error::PicardNonConvergence {
                factor: f64::INFINITY,
                iterations: k + 1,
            });
        }
        match first {
            None => first = Some(diff),
            Some(d0) if k == 1 => factor = if d0 == 0.0 { 0.0 } else { diff / d0 },
            _ => {}
        }
        let floor = NOISE_FLOOR * scale;
        if k >= 1 && diff <= picard_tol * scale.max(f64::MIN_POSITIVE) {
            return Ok(StepOutcome {
                state,
                grid: next_grid,
                contraction_factor: factor,
                iterations: k + 1,
            });
        }
        if k >= 1 && diff > floor && diff >= prev_diff {
            return Err(Error::PicardNonConvergence {
                factor: diff / prev_diff,
                iterations: k + 1,
            });
        }
        prev_diff = diff;
    }
    Err(Error::PicardNonConvergence {
        factor: factor.max(1.0),
        iterations: picard_max,
    })
}

fn one() -> crate::Complex {
    crate::Complex::new(1.0, 0.0)
}

fn non_finite(_: Error) -> Error {
    Error::PicardNonConvergence {
        factor: f64::INFINITY,
        iterations: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{build_basis, UniformGrid};
    use crate::norms::LebesgueExponent;
    use crate::Complex;

    fn setup(amp: f64) -> SemilinearProblem {
        let b = build_basis(1, 24, UniformGrid::default_for_degree(1, 24).unwrap()).unwrap();
        let u0 = SpectralField::unit(b, &[0]).unwrap().scaled(Complex::new(amp, 0.0));
        SemilinearProblem::new(1.0, 3.0, LebesgueExponent::Finite(4.0), u0).unwrap()
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let prob = setup(0.0);
        let (v, k) = duhamel_step(prob.u0(), &prob, 0.0, 1e-2, 1e-12, 50).unwrap();
        assert!(v.coeffs().iter().all(|c| *c == Complex::new(0.0, 0.0)));
        assert_eq!(k, 0.0);
    }

    #[test]
    fn linear_mode_is_the_propagator() {
        let prob = setup(1.0).with_nonlinearity(false);
        let u = SpectralField::random_band_limited(prob.u0().basis().clone(), 4, 24, false);
        let (v, _) = duhamel_step(&u, &prob, 0.0, 0.3, 1e-12, 50).unwrap();
        assert!(v.max_abs_diff(&apply_spectral(&u, 1.0, 0.3)).unwrap() < 1e-12);
    }

    #[test]
    fn small_data_contracts_strongly() {
        let prob = setup(0.01);
        let (_, k) = duhamel_step(prob.u0(), &prob, 0.0, 1e-3, 1e-13, 50).unwrap();
        let (_, k_fine) = duhamel_step(prob.u0(), &prob, 0.0, 1e-4, 1e-13, 50).unwrap();
        assert!(k < 0.05, "factor {k}");
        // the factor is ~ Lipschitz constant × Δt
        assert!(k_fine < k);
    }

    #[test]
    fn large_step_on_large_data_fails() {
        let prob = setup(10.0);
        let err = duhamel_step(prob.u0(), &prob, 0.0, 1.0, 1e-12, 50).unwrap_err();
        assert!(matches!(err, Error::PicardNonConvergence { .. }), "{err:?}");
    }
}
