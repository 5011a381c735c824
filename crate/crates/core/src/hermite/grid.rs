use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Uniform tensor grid on `[-L, L]^d` used for norms and pointwise
/// nonlinearities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    dim: usize,
    half_width: f64,
    points_per_axis: usize,
}

impl UniformGrid {
    pub fn new(dim: usize, half_width: f64, points_per_axis: usize) -> Result<Self> {
        check_dim(dim)?;
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half-width must be positive and finite, got {half_width}"
            )));
        }
        if points_per_axis < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points per axis, got {points_per_axis}"
            )));
        }
        Ok(Self {
            dim,
            half_width,
            points_per_axis,
        })
    }

    /// `L = max(10, √(2N+1) + 6)` and about 20 points per unit length, with an
    /// odd count so that the origin is a grid point.
    pub fn default_for_degree(dim: usize, max_degree: usize) -> Result<Self> {
        let half_width = default_half_width(max_degree);
        Self::new(dim, half_width, odd_count(20.0 * half_width))
    }

    /// Same half-width as the default, with at least `per_unit` points per
    /// unit length.
    pub fn refined_for_degree(dim: usize, max_degree: usize, per_unit: f64) -> Result<Self> {
        let half_width = default_half_width(max_degree);
        Self::new(dim, half_width, odd_count(per_unit.max(20.0) * half_width))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points_per_axis - 1) as f64
    }

    /// Total number of grid points, `n^d`.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Axis coordinate `i`, computed so that `x_i = -x_{n-1-i}` exactly.
    pub fn coordinate(&self, i: usize) -> f64 {
        let n1 = (self.points_per_axis - 1) as f64;
        (2.0 * i as f64 - n1) * self.half_width / n1
    }

    pub fn axis(&self) -> Vec<f64> {
        (0..self.points_per_axis).map(|i| self.coordinate(i)).collect()
    }

    /// One-dimensional trapezoid weights along an axis.
    pub fn axis_weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let n = self.points_per_axis;
        (0..n)
            .map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h })
            .collect()
    }

    /// Tensor trapezoid weights in row-major order.
    pub fn weights(&self) -> Vec<f64> {
        let w = self.axis_weights();
        match self.dim {
            1 => w,
            _ => {
                let mut out = Vec::with_capacity(self.len());
                for &a in &w {
                    for &b in &w {
                        out.push(a * b);
                    }
                }
                out
            }
        }
    }

    /// Coordinates of the flat (row-major) point index `idx`.
    pub fn point(&self, idx: usize) -> [f64; 2] {
        match self.dim {
            1 => [self.coordinate(idx), 0.0],
            _ => {
                let n = self.points_per_axis;
                [self.coordinate(idx / n), self.coordinate(idx % n)]
            }
        }
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

pub(crate) fn default_half_width(max_degree: usize) -> f64 {
    (10.0_f64).max((2.0 * max_degree as f64 + 1.0).sqrt() + 6.0)
}

fn odd_count(target: f64) -> usize {
    let n = target.ceil() as usize + 1;
    if n % 2 == 0 {
        n + 1
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_consistent_spacing() {
        let g = UniformGrid::new(1, 10.0, 401).unwrap();
        assert!((g.spacing() * 400.0 - 20.0).abs() < 1e-12);
        for i in 0..401 {
            assert_eq!(g.coordinate(i), -g.coordinate(400 - i));
        }
        assert_eq!(g.coordinate(200), 0.0);
    }

    #[test]
    fn default_grid_sizes() {
        let g = UniformGrid::default_for_degree(1, 4).unwrap();
        assert_eq!(g.half_width(), 10.0);
        assert_eq!(g.points_per_axis(), 201);
        let g = UniformGrid::default_for_degree(1, 48).unwrap();
        assert!((g.half_width() - (97f64.sqrt() + 6.0)).abs() < 1e-12);
        assert_eq!(g.points_per_axis() % 2, 1);
        assert!(g.spacing() <= 0.1 + 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(UniformGrid::new(3, 1.0, 10), Err(Error::UnsupportedDimension(3)));
        assert!(UniformGrid::new(1, -1.0, 10).is_err());
        assert!(UniformGrid::new(1, 1.0, 1).is_err());
    }

    #[test]
    fn weights_sum_to_volume() {
        let g = UniformGrid::new(2, 3.0, 31).unwrap();
        let s: f64 = g.weights().iter().sum();
        assert!((s - 36.0).abs() < 1e-12);
    }
}
