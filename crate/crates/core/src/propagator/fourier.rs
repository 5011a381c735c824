use alloc::format;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermite::UniformGrid;

/// Half-width of the self-check grid.
pub const SELFCHECK_HALF_WIDTH: f64 = 12.0;
/// Points of the self-check grid (spacing 0.05).
pub const SELFCHECK_POINTS: usize = 481;

/// Transforms `e^{-πa y²}` by trapezoid quadrature of
/// `∫ f(y) e^{-2πixy} dy` on the default self-check grid and returns the sup
/// error against `a^{-1/2} e^{-πx²/a}` over the grid.
pub fn gaussian_fourier_selfcheck(a: f64) -> Result<f64> {
    gaussian_fourier_selfcheck_on(a, UniformGrid::new(1, SELFCHECK_HALF_WIDTH, SELFCHECK_POINTS)?)
}

pub fn gaussian_fourier_selfcheck_on(a: f64, grid: UniformGrid) -> Result<f64> {
    if !(0.1..=10.0).contains(&a) {
        return Err(Error::Domain(format!("Gaussian parameter {a} outside [0.1, 10]")));
    }
    if grid.dim() != 1 {
        return Err(Error::UnsupportedDimension(grid.dim()));
    }
    let y = grid.axis();
    let w = grid.axis_weights();
    let f: alloc::vec::Vec<f64> = y
        .iter()
        .zip(&w)
        .map(|(&y, &w)| w * (-PI * a * y * y).exp())
        .collect();
    let mut err: f64 = 0.0;
    for &x in &y {
        // f is even, so the sine part cancels.
        let approx: f64 = f
            .iter()
            .zip(&y)
            .map(|(fy, &yy)| fy * (2.0 * PI * x * yy).cos())
            .sum();
        let exact = a.powf(-0.5) * (-PI * x * x / a).exp();
        err = err.max((approx - exact).abs());
    }
    Ok(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_agreement() {
        assert!(gaussian_fourier_selfcheck(1.0).unwrap() <= 1e-8);
        assert!(gaussian_fourier_selfcheck(2.0).unwrap() <= 1e-8);
        assert!(gaussian_fourier_selfcheck(0.1).unwrap() <= 1e-6);
        assert!(gaussian_fourier_selfcheck(10.0).unwrap() <= 1e-6);
    }

    #[test]
    fn domain() {
        assert!(gaussian_fourier_selfcheck(20.0).is_err());
        assert!(gaussian_fourier_selfcheck(0.0).is_err());
    }
}
