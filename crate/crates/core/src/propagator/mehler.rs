//! `e^{-tH}` through the Mehler kernel, written as a Gaussian convolution:
//!
//! ```text
//! e^{-tH} f(x) = C (sinh 2t)^{-d/2} e^{-(tanh t/2)|x|²}
//!                ∫ e^{-|x-y|²/(2 sinh 2t)} e^{-(tanh t/2)|y|²} f(y) dy
//! ```
//!
//! The kernel factorizes over the axes, so the `d`-dimensional operator is
//! the one-dimensional one applied along each axis in turn.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermite::{GridField, UniformGrid};
use crate::Complex;

const CALIBRATION_TIME: f64 = 1.0;

/// Mehler-route propagator on a fixed uniform grid, with its one-dimensional
/// normalization constant calibrated on the ground state.
#[derive(Debug, Clone, Copy)]
pub struct MehlerEngine {
    grid: UniformGrid,
    constant: f64,
}

impl MehlerEngine {
    /// Fixes the constant so that `e^{-tH}Φ_0 = e^{-t}Φ_0` at `t = 1` on this
    /// grid (in one dimension; the `d`-dimensional constant is its `d`-th
    /// power by separability).
    pub fn calibrated(grid: UniformGrid) -> Result<Self> {
        let mut raw = Self {
            grid,
            constant: 1.0,
        };
        let axis = grid.axis();
        let ground: Vec<Complex> = axis
            .iter()
            .map(|&x| Complex::new((-0.5 * x * x).exp(), 0.0))
            .collect();
        let out = raw.apply_axis(&ground, CALIBRATION_TIME)?;
        let decay = (-CALIBRATION_TIME).exp();
        let (mut num, mut den) = (0.0, 0.0);
        for (o, g) in out.iter().zip(&ground) {
            num += o.re * g.re * decay;
            den += o.re * o.re;
        }
        if !(den > 0.0) {
            return Err(Error::Convergence { residual: 1.0 });
        }
        raw.constant = num / den;
        Ok(raw)
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// The calibrated one-dimensional constant (analytically `(2π)^{-1/2}`).
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Largest grid spacing that resolves the kernel at time `t`.
    pub fn required_spacing(t: f64) -> f64 {
        t.tanh().sqrt() / 4.0
    }

    pub fn apply(&self, f: &GridField, t: f64) -> Result<GridField> {
        if *f.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidPropagator("time must be finite and nonnegative".into()));
        }
        if t == 0.0 {
            return Ok(f.clone());
        }
        let n = self.grid.points_per_axis();
        let values = match self.grid.dim() {
            1 => self.apply_axis(f.values(), t)?,
            _ => {
                let mut v = f.values().to_vec();
                // rows (second axis), then columns (first axis)
                for r in 0..n {
                    let out = self.apply_axis(&v[r * n..(r + 1) * n], t)?;
                    v[r * n..(r + 1) * n].copy_from_slice(&out);
                }
                let mut col = vec![Complex::new(0.0, 0.0); n];
                for c in 0..n {
                    for r in 0..n {
                        col[r] = v[r * n + c];
                    }
                    let out = self.apply_axis(&col, t)?;
                    for r in 0..n {
                        v[r * n + c] = out[r];
                    }
                }
                v
            }
        };
        GridField::new(self.grid, values)
    }

    fn apply_axis(&self, f: &[Complex], t: f64) -> Result<Vec<Complex>> {
        let h = self.grid.spacing();
        let required = Self::required_spacing(t);
        if h > required {
            return Err(Error::Unresolved {
                t,
                spacing: h,
                required,
            });
        }
        let n = f.len();
        let s = (2.0 * t).sinh();
        let th = t.tanh();
        let w = self.grid.axis_weights();
        let x = self.grid.axis();
        let kernel: Vec<f64> = (0..n)
            .map(|m| {
                let d = m as f64 * h;
                (-d * d / (2.0 * s)).exp()
            })
            .collect();
        let g: Vec<Complex> = f
            .iter()
            .zip(&x)
            .zip(&w)
            .map(|((v, &y), &wy)| v * (wy * (-0.5 * th * y * y).exp()))
            .collect();
        let prefactor = self.constant / s.sqrt();
        Ok((0..n)
            .map(|i| {
                let mut acc = Complex::new(0.0, 0.0);
                for (j, gj) in g.iter().enumerate() {
                    acc += gj * kernel[i.abs_diff(j)];
                }
                acc * (prefactor * (-0.5 * th * x[i] * x[i]).exp())
            })
            .collect())
    }
}

/// One-shot Mehler propagation on the grid of `f`.
pub fn apply_mehler(f: &GridField, t: f64) -> Result<GridField> {
    MehlerEngine::calibrated(*f.grid())?.apply(f, t)
}
