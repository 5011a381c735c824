//! Quadrature rules: Gauss–Legendre (fixed and adaptive) and Gauss–Hermite.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermite::functions::scaled_pair;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let d = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Adaptive bisection driven by a Gauss–Legendre rule: an interval is accepted
/// once the rule on the whole interval agrees with the sum over its halves.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_depth: usize,
) -> Integral {
    let whole = rule.integrate(a, b, &mut f);
    let mut total = 0.0;
    let mut error = 0.0;
    // Explicit stack of (a, b, estimate, depth); the reference scale is
    // refreshed as accepted pieces accumulate.
    let mut stack = vec![(a, b, whole, 0usize)];
    let scale = whole.abs();
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(lo, mid, &mut f);
        let right = rule.integrate(mid, hi, &mut f);
        let refined = left + right;
        let diff = (refined - est).abs();
        let tol = rel_tol * scale.max(total.abs()).max(f64::MIN_POSITIVE);
        if diff <= tol || depth >= max_depth {
            total += refined;
            error += diff;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Integral {
        value: total,
        error,
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson
/// shifts. `diag` is overwritten with the (unsorted) eigenvalues; `off[i]`
/// couples rows `i` and `i + 1` and is destroyed.
pub fn tridiagonal_eigenvalues(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if off.len() != n {
        return Err(Error::Domain("off-diagonal length must equal the order".into()));
    }
    if n == 0 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Convergence {
                    residual: off[l].abs(),
                });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// Gauss–Hermite rule with `n` nodes, stored with compensated weights
/// `W_i = w_i e^{x_i²}` so that `∫ g ≈ Σ W_i g(x_i)` is exact whenever
/// `g = e^{-x²}·(polynomial of degree ≤ 2n-1)`; in particular for every product
/// `h_j h_k` with `j + k ≤ 2n - 1`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    compensated: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Gauss-Hermite rule needs at least one node".into()));
        }
        // Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix of the
        // Hermite recurrence, then polished by Newton on h_n.
        let mut diag = vec![0.0; n];
        let mut off: Vec<f64> = (1..=n).map(|k| (k as f64 / 2.0).sqrt()).collect();
        tridiagonal_eigenvalues(&mut diag, &mut off)?;
        diag.sort_by(|a, b| a.total_cmp(b));
        let sqrt_2n = (2.0 * n as f64).sqrt();
        for x in diag.iter_mut() {
            for _ in 0..3 {
                let (cur, prev, _) = scaled_pair(n, *x);
                let deriv = sqrt_2n * prev - *x * cur;
                if deriv == 0.0 {
                    break;
                }
                *x -= cur / deriv;
            }
        }
        for i in 0..n / 2 {
            let sym = 0.5 * (diag[n - 1 - i] - diag[i]);
            diag[i] = -sym;
            diag[n - 1 - i] = sym;
        }
        if n % 2 == 1 {
            diag[n / 2] = 0.0;
        }
        // W_i = 1 / (n h_{n-1}(x_i)^2), evaluated in log space.
        let compensated = diag
            .iter()
            .map(|&x| {
                let (_, prev, log_scale) = scaled_pair(n, x);
                (-(n as f64).ln() - 2.0 * (prev.abs().ln() + log_scale)).exp()
            })
            .collect();
        Ok(Self {
            nodes: diag,
            compensated,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights for integrating plain functions over ℝ.
    pub fn compensated_weights(&self) -> &[f64] {
        &self.compensated
    }

    /// Classical weights for `∫ e^{-x²} p(x) dx`.
    pub fn classical_weights(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.compensated)
            .map(|(&x, &w)| w * (-x * x).exp())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(10);
        let v = rule.integrate(0.0, 2.0, |x| x.powi(19));
        assert!((v - 2f64.powi(20) / 20.0).abs() < 1e-9 * v);
        let s: f64 = rule.weights().iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let rule = GaussLegendre::new(15);
        let r = integrate_adaptive(&rule, |x| (-(x * x) / 1e-4).exp(), -3.0, 3.0, 1e-13, 40);
        let exact = (PI * 1e-4).sqrt();
        assert!((r.value - exact).abs() < 1e-12 * exact, "{} vs {}", r.value, exact);
    }

    #[test]
    fn tridiagonal_known_spectrum() {
        // Discrete Laplacian: eigenvalues 2 - 2cos(kπ/(n+1)).
        let n = 12;
        let mut d = vec![2.0; n];
        let mut e = vec![-1.0; n];
        tridiagonal_eigenvalues(&mut d, &mut e).unwrap();
        d.sort_by(|a, b| a.total_cmp(b));
        for (k, v) in d.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn gauss_hermite_moments() {
        let gh = GaussHermite::new(20).unwrap();
        let w = gh.classical_weights();
        let m0: f64 = w.iter().sum();
        assert!((m0 - PI.sqrt()).abs() < 1e-13);
        // ∫ x^4 e^{-x²} = 3√π/4
        let m4: f64 = gh.nodes().iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn gauss_hermite_large_order_stays_finite() {
        let gh = GaussHermite::new(1026).unwrap();
        assert!(gh.compensated_weights().iter().all(|w| w.is_finite() && *w > 0.0));
        let xmax = gh.nodes().last().copied().unwrap();
        assert!(xmax > 40.0 && xmax < (2.0 * 1026.0 + 1.0_f64).sqrt());
    }
}
