use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::functions::{hermite_row, MAX_DEGREE};
use super::grid::{check_dim, UniformGrid};
use crate::error::{Error, Result};
use crate::quadrature::GaussHermite;
use crate::Complex;

/// Truncation threshold on `h_k(±L)²`, the boundary value of the integrands
/// `h_j h_k` that the uniform-grid quadrature drops.
pub const TRUNCATION_TOLERANCE: f64 = 1e-14;

/// Tensor Hermite basis `Φ_α = h_{α_1} ⊗ … ⊗ h_{α_d}`, `0 ≤ α_i ≤ N`, with
/// tables on Gauss–Hermite nodes (for exact projections) and on a uniform grid
/// (for norms and pointwise nonlinearities).
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    dim: usize,
    max_degree: usize,
    grid: UniformGrid,
    quad_nodes: Vec<f64>,
    quad_weights: Vec<f64>,
    node_table: Vec<f64>,
    grid_table: Vec<f64>,
    grid_weights: Vec<f64>,
}

/// Builds a shared basis; see [`HermiteBasis::new`].
pub fn build_basis(dim: usize, max_degree: usize, grid: UniformGrid) -> Result<Arc<HermiteBasis>> {
    HermiteBasis::new(dim, max_degree, grid).map(Arc::new)
}

impl HermiteBasis {
    pub fn new(dim: usize, max_degree: usize, grid: UniformGrid) -> Result<Self> {
        check_dim(dim)?;
        if max_degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree {
                degree: max_degree,
                cap: MAX_DEGREE,
            });
        }
        if grid.dim() != dim {
            return Err(Error::GridMismatch);
        }
        let modes = max_degree + 1;
        let mut edge = vec![0.0; modes];
        hermite_row(grid.half_width(), &mut edge);
        if let Some(k) = edge.iter().position(|h| h * h > TRUNCATION_TOLERANCE) {
            return Err(Error::TruncationRisk {
                degree: k,
                half_width: grid.half_width(),
                tail: edge[k] * edge[k],
            });
        }

        let quad = GaussHermite::new(2 * modes)?;
        let quad_nodes = quad.nodes().to_vec();
        let quad_weights = quad.compensated_weights().to_vec();
        let node_table = tabulate(&quad_nodes, modes);
        let axis = grid.axis();
        let grid_table = tabulate(&axis, modes);
        Ok(Self {
            dim,
            max_degree,
            grid,
            quad_nodes,
            quad_weights,
            node_table,
            grid_table,
            grid_weights: grid.axis_weights(),
        })
    }

    /// Basis on the default grid for this degree.
    pub fn with_default_grid(dim: usize, max_degree: usize) -> Result<Self> {
        Self::new(dim, max_degree, UniformGrid::default_for_degree(dim, max_degree)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Modes per axis, `N + 1`.
    pub fn modes(&self) -> usize {
        self.max_degree + 1
    }

    /// Number of basis functions, `(N + 1)^d`.
    pub fn len(&self) -> usize {
        self.modes().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn quad_nodes(&self) -> &[f64] {
        &self.quad_nodes
    }

    pub fn quad_weights(&self) -> &[f64] {
        &self.quad_weights
    }

    /// `h_k` at the uniform grid coordinates of one axis.
    pub fn grid_row(&self, k: usize) -> &[f64] {
        let n = self.grid.points_per_axis();
        &self.grid_table[k * n..(k + 1) * n]
    }

    /// `h_k` at the Gauss–Hermite nodes.
    pub fn node_row(&self, k: usize) -> &[f64] {
        let n = self.quad_nodes.len();
        &self.node_table[k * n..(k + 1) * n]
    }

    /// Two bases are interchangeable when they agree on dimension, degree and grid.
    pub fn same_as(&self, other: &HermiteBasis) -> bool {
        self.dim == other.dim && self.max_degree == other.max_degree && self.grid == other.grid
    }

    /// Multi-index of the flat coefficient position `idx` (row-major).
    pub fn multi_index(&self, idx: usize) -> [usize; 2] {
        match self.dim {
            1 => [idx, 0],
            _ => [idx / self.modes(), idx % self.modes()],
        }
    }

    pub fn flat_index(&self, alpha: &[usize]) -> Option<usize> {
        if alpha.len() != self.dim || alpha.iter().any(|&a| a > self.max_degree) {
            return None;
        }
        Some(match self.dim {
            1 => alpha[0],
            _ => alpha[0] * self.modes() + alpha[1],
        })
    }

    /// `|α|` for the flat coefficient position `idx`.
    pub fn total_degree(&self, idx: usize) -> usize {
        let a = self.multi_index(idx);
        a[0] + a[1]
    }

    /// Distinct eigenvalues `2k + d` reachable in this basis, `k = 0..=dN`.
    pub fn eigenvalues(&self) -> Vec<super::Eigenvalue> {
        (0..=self.dim * self.max_degree)
            .map(|k| super::Eigenvalue::new(k, self.dim))
            .collect()
    }

    /// `Σ_α c_α Φ_α` on the uniform grid.
    pub(crate) fn synthesize_grid(&self, coeffs: &[Complex]) -> Vec<Complex> {
        synthesize_tensor(
            self.dim,
            &self.grid_table,
            self.grid.points_per_axis(),
            self.modes(),
            coeffs,
        )
    }

    /// Trapezoid-rule inner products with `Φ_α` from uniform-grid samples.
    pub(crate) fn analyze_grid(&self, values: &[Complex]) -> Vec<Complex> {
        analyze_tensor(
            self.dim,
            &self.grid_table,
            &self.grid_weights,
            self.grid.points_per_axis(),
            self.modes(),
            values,
        )
    }

    /// Gauss–Hermite inner products with `Φ_α` from samples on the tensor node grid.
    pub(crate) fn analyze_nodes(&self, values: &[Complex]) -> Vec<Complex> {
        analyze_tensor(
            self.dim,
            &self.node_table,
            &self.quad_weights,
            self.quad_nodes.len(),
            self.modes(),
            values,
        )
    }

    /// Gram matrix `∫ h_j h_k` by Gauss–Hermite quadrature (one axis).
    pub fn gram_matrix(&self) -> Vec<f64> {
        let m = self.modes();
        let mut g = vec![0.0; m * m];
        for j in 0..m {
            for k in j..m {
                let v: f64 = self
                    .node_row(j)
                    .iter()
                    .zip(self.node_row(k))
                    .zip(&self.quad_weights)
                    .map(|((a, b), w)| a * b * w)
                    .sum();
                g[j * m + k] = v;
                g[k * m + j] = v;
            }
        }
        g
    }
}

fn tabulate(points: &[f64], modes: usize) -> Vec<f64> {
    let n = points.len();
    let mut table = vec![0.0; modes * n];
    let mut row = vec![0.0; modes];
    for (j, &x) in points.iter().enumerate() {
        hermite_row(x, &mut row);
        for (k, &v) in row.iter().enumerate() {
            table[k * n + j] = v;
        }
    }
    table
}

fn synthesize_tensor(
    dim: usize,
    table: &[f64],
    npts: usize,
    modes: usize,
    coeffs: &[Complex],
) -> Vec<Complex> {
    let zero = Complex::new(0.0, 0.0);
    match dim {
        1 => {
            let mut out = vec![zero; npts];
            for (k, &c) in coeffs.iter().enumerate() {
                if c == zero {
                    continue;
                }
                let row = &table[k * npts..(k + 1) * npts];
                for (o, &h) in out.iter_mut().zip(row) {
                    *o += c * h;
                }
            }
            out
        }
        _ => {
            // tmp[a1][j2] = Σ_{a2} c[a1][a2] h_{a2}(y_{j2})
            let mut tmp = vec![zero; modes * npts];
            for a1 in 0..modes {
                let t = &mut tmp[a1 * npts..(a1 + 1) * npts];
                for a2 in 0..modes {
                    let c = coeffs[a1 * modes + a2];
                    if c == zero {
                        continue;
                    }
                    let row = &table[a2 * npts..(a2 + 1) * npts];
                    for (o, &h) in t.iter_mut().zip(row) {
                        *o += c * h;
                    }
                }
            }
            let mut out = vec![zero; npts * npts];
            for j1 in 0..npts {
                let o = &mut out[j1 * npts..(j1 + 1) * npts];
                for a1 in 0..modes {
                    let h = table[a1 * npts + j1];
                    if h == 0.0 {
                        continue;
                    }
                    let t = &tmp[a1 * npts..(a1 + 1) * npts];
                    for (ov, &tv) in o.iter_mut().zip(t) {
                        *ov += tv * h;
                    }
                }
            }
            out
        }
    }
}

fn analyze_tensor(
    dim: usize,
    table: &[f64],
    weights: &[f64],
    npts: usize,
    modes: usize,
    values: &[Complex],
) -> Vec<Complex> {
    let zero = Complex::new(0.0, 0.0);
    match dim {
        1 => {
            let weighted: Vec<Complex> = values.iter().zip(weights).map(|(v, w)| v * w).collect();
            (0..modes)
                .map(|k| {
                    let row = &table[k * npts..(k + 1) * npts];
                    weighted
                        .iter()
                        .zip(row)
                        .fold(zero, |acc, (v, &h)| acc + v * h)
                })
                .collect()
        }
        _ => {
            // tmp[j1][a2] = Σ_{j2} w_{j2} v[j1][j2] h_{a2}(y_{j2})
            let mut tmp = vec![zero; npts * modes];
            for j1 in 0..npts {
                let v = &values[j1 * npts..(j1 + 1) * npts];
                let weighted: Vec<Complex> = v.iter().zip(weights).map(|(v, w)| v * w).collect();
                for a2 in 0..modes {
                    let row = &table[a2 * npts..(a2 + 1) * npts];
                    tmp[j1 * modes + a2] = weighted
                        .iter()
                        .zip(row)
                        .fold(zero, |acc, (v, &h)| acc + v * h);
                }
            }
            let mut out = vec![zero; modes * modes];
            for a1 in 0..modes {
                let row = &table[a1 * npts..(a1 + 1) * npts];
                let o = &mut out[a1 * modes..(a1 + 1) * modes];
                for j1 in 0..npts {
                    let wh = weights[j1] * row[j1];
                    if wh == 0.0 {
                        continue;
                    }
                    let t = &tmp[j1 * modes..(j1 + 1) * modes];
                    for (ov, &tv) in o.iter_mut().zip(t) {
                        *ov += tv * wh;
                    }
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_is_identity() {
        let grid = UniformGrid::new(1, 10.0, 401).unwrap();
        let b = HermiteBasis::new(1, 8, grid).unwrap();
        assert_eq!(b.len(), 9);
        let g = b.gram_matrix();
        for j in 0..9 {
            for k in 0..9 {
                let target = if j == k { 1.0 } else { 0.0 };
                assert!((g[j * 9 + k] - target).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn two_dimensional_basis_has_tensor_count() {
        let grid = UniformGrid::new(2, 8.0, 201).unwrap();
        let b = HermiteBasis::new(2, 4, grid).unwrap();
        assert_eq!(b.len(), 25);
        assert_eq!(b.multi_index(7), [1, 2]);
        assert_eq!(b.flat_index(&[1, 2]), Some(7));
        assert_eq!(b.total_degree(7), 3);
    }

    #[test]
    fn degree_cap_and_truncation_errors() {
        let grid = UniformGrid::new(1, 40.0, 801).unwrap();
        assert!(matches!(
            HermiteBasis::new(1, 600, grid),
            Err(Error::UnsupportedDegree { degree: 600, .. })
        ));
        let small = UniformGrid::new(1, 6.0, 121).unwrap();
        match HermiteBasis::new(1, 40, small) {
            Err(Error::TruncationRisk { degree, .. }) => assert!(degree <= 40),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn dimension_guard() {
        let grid = UniformGrid::new(1, 10.0, 201).unwrap();
        assert_eq!(HermiteBasis::new(3, 2, grid).unwrap_err(), Error::UnsupportedDimension(3));
        assert_eq!(HermiteBasis::new(2, 2, grid).unwrap_err(), Error::GridMismatch);
    }
}
