//! Hermite functions, the tensor Hermite basis in `d ∈ {1, 2}`, and the two
//! sampled representations of a function: spectral coefficients and values
//! on a uniform grid.
//!
//! Projections use one of two quadratures. [`SpectralField::project_fn`]
//! samples a callable at `2(N+1)` Gauss–Hermite nodes per axis, which is exact
//! for polynomial-times-Gaussian data. [`project`] works from uniform-grid
//! samples with the trapezoid rule, which is spectrally accurate for data
//! decaying like a Gaussian well inside `[-L, L]`.

mod basis;
mod field;
pub(crate) mod functions;
mod grid;

pub use basis::{build_basis, HermiteBasis, TRUNCATION_TOLERANCE};
pub use field::{project, synthesize, GridField, SpectralField};
pub use functions::{eval_hermite_1d, hermite_row, MAX_DEGREE};
pub use grid::UniformGrid;
pub(crate) use grid::check_dim;

/// Eigenvalue `2k + d` of `H` on the eigenspace of total degree `k = |α|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub k: usize,
    pub value: f64,
}

impl Eigenvalue {
    pub fn new(k: usize, dim: usize) -> Self {
        Self {
            k,
            value: eigenvalue_of(k, dim),
        }
    }
}

pub fn eigenvalue_of(k: usize, dim: usize) -> f64 {
    (2 * k + dim) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenvalue_of(0, 1), 1.0);
        assert_eq!(eigenvalue_of(0, 2), 2.0);
        assert_eq!(eigenvalue_of(3, 1), 7.0);
        assert_eq!(Eigenvalue::new(2, 2).value, 6.0);
    }
}
