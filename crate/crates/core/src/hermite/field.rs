use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::HermiteBasis;
use super::grid::UniformGrid;
use super::Eigenvalue;
use crate::error::{Error, Result};
use crate::Complex;

/// Hermite coefficients `⟨f, Φ_α⟩`, `0 ≤ α_i ≤ N`, stored row-major over the
/// multi-index.
#[derive(Debug, Clone)]
pub struct SpectralField {
    basis: Arc<HermiteBasis>,
    coeffs: Vec<Complex>,
}

/// Samples on a [`UniformGrid`], row-major over the axes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    grid: UniformGrid,
    values: Vec<Complex>,
}

impl SpectralField {
    pub fn new(basis: Arc<HermiteBasis>, coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::Domain(format!(
                "expected {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        Ok(Self { basis, coeffs })
    }

    pub fn zeros(basis: Arc<HermiteBasis>) -> Self {
        let coeffs = vec![Complex::new(0.0, 0.0); basis.len()];
        Self { basis, coeffs }
    }

    /// The basis function `Φ_α` itself.
    pub fn unit(basis: Arc<HermiteBasis>, alpha: &[usize]) -> Result<Self> {
        let idx = basis.flat_index(alpha).ok_or_else(|| {
            Error::Domain(format!(
                "multi-index {alpha:?} outside the basis (d = {}, N = {})",
                basis.dim(),
                basis.max_degree()
            ))
        })?;
        let mut f = Self::zeros(basis);
        f.coeffs[idx] = Complex::new(1.0, 0.0);
        Ok(f)
    }

    /// Projection of `f` by Gauss–Hermite quadrature on the tensor node grid;
    /// exact for polynomial-times-Gaussian data of moderate degree.
    pub fn project_fn<F: Fn([f64; 2]) -> Complex>(basis: Arc<HermiteBasis>, f: F) -> Self {
        let nodes = basis.quad_nodes();
        let values: Vec<Complex> = match basis.dim() {
            1 => nodes.iter().map(|&x| f([x, 0.0])).collect(),
            _ => nodes
                .iter()
                .flat_map(|&x| nodes.iter().map(move |&y| [x, y]))
                .map(&f)
                .collect(),
        };
        let coeffs = basis.analyze_nodes(&values);
        Self { basis, coeffs }
    }

    /// Coefficients drawn uniformly from `[-1, 1]` (plus `i·[-1, 1]` unless
    /// `real`) for every index with `max α_i ≤ band`, zero above.
    pub fn random_band_limited(basis: Arc<HermiteBasis>, seed: u64, band: usize, real: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = Self::zeros(basis);
        for idx in 0..f.coeffs.len() {
            let a = f.basis.multi_index(idx);
            let re = rng.gen_range(-1.0..=1.0);
            let im = if real { 0.0 } else { rng.gen_range(-1.0..=1.0) };
            if a[0].max(a[1]) <= band {
                f.coeffs[idx] = Complex::new(re, im);
            }
        }
        f
    }

    pub fn basis(&self) -> &Arc<HermiteBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    pub fn coeff(&self, alpha: &[usize]) -> Option<Complex> {
        self.basis.flat_index(alpha).map(|i| self.coeffs[i])
    }

    pub fn check_same_basis(&self, other: &SpectralField) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis.same_as(&other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// `Σ_α c_α Φ_α` on the basis grid.
    pub fn synthesize(&self) -> GridField {
        GridField {
            grid: *self.basis.grid(),
            values: self.basis.synthesize_grid(&self.coeffs),
        }
    }

    /// [`synthesize`](Self::synthesize), insisting that the field belongs to `basis`.
    pub fn synthesize_with(&self, basis: &HermiteBasis) -> Result<GridField> {
        if !self.basis.same_as(basis) {
            return Err(Error::BasisMismatch);
        }
        Ok(self.synthesize())
    }

    /// Multiplies each coefficient by `m(2|α| + d)`; `m` is evaluated once per
    /// distinct eigenvalue.
    pub fn apply_multiplier<M: FnMut(Eigenvalue) -> f64>(&self, mut m: M) -> Self {
        let table: Vec<f64> = self.basis.eigenvalues().into_iter().map(&mut m).collect();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * table[self.basis.total_degree(i)])
            .collect();
        Self {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    /// Coefficient 2-norm, equal to the `L²` norm of the synthesized function.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: Complex) -> Self {
        Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: Complex, other: &SpectralField) -> Result<Self> {
        self.check_same_basis(other)?;
        Ok(Self {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b * s)
                .collect(),
        })
    }

    /// Largest coefficient difference in modulus.
    pub fn max_abs_diff(&self, other: &SpectralField) -> Result<f64> {
        self.check_same_basis(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Trapezoid-rule projection of uniform-grid samples onto `basis`.
pub fn project(f: &GridField, basis: Arc<HermiteBasis>) -> Result<SpectralField> {
    if f.grid != *basis.grid() {
        return Err(Error::GridMismatch);
    }
    let coeffs = basis.analyze_grid(&f.values);
    Ok(SpectralField { basis, coeffs })
}

/// Free-function form of [`SpectralField::synthesize`].
pub fn synthesize(c: &SpectralField) -> GridField {
    c.synthesize()
}

impl GridField {
    pub fn new(grid: UniformGrid, values: Vec<Complex>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidGrid("non-finite sample".into()));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn<F: FnMut([f64; 2]) -> Complex>(grid: UniformGrid, mut f: F) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        Self {
            grid,
            values: vec![Complex::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &GridField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn scaled(&self, s: Complex) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}
