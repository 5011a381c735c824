//! Hermite functions and the tensor basis against exact or naive oracles.

use fho_core::hermite::{project, synthesize};
use fho_core::{build_basis, eval_hermite_1d, Complex, SpectralField, UniformGrid};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

/// Coefficients of `H_k` from Rodrigues' formula
/// `H_k = (−1)^k e^{x²} d^k/dx^k e^{−x²}`, via `P_{k+1} = P_k' − 2x P_k`.
fn rodrigues_polys(max: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(max + 1);
    let mut p = vec![BigInt::one()];
    for k in 0..=max {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out.push(p.iter().map(|c| c * sign).collect());
        let mut next = vec![BigInt::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            if i > 0 {
                next[i - 1] += c * i;
            }
            next[i + 1] -= c * 2;
        }
        p = next;
    }
    out
}

/// `h_k(x)` with `H_k(x)² / (2^k k!)` formed exactly.
fn oracle(poly: &[BigInt], k: usize, x: f64) -> f64 {
    let xr = BigRational::from_float(x).unwrap();
    let mut acc = BigRational::zero();
    for c in poly.iter().rev() {
        acc = acc * &xr + BigRational::from_integer(c.clone());
    }
    let mut norm = BigInt::one();
    for j in 1..=k {
        norm *= 2 * j;
    }
    let sq = (&acc * &acc / BigRational::from_integer(norm)).to_f64().unwrap();
    let sign = if acc < BigRational::zero() { -1.0 } else { 1.0 };
    sign * sq.sqrt() * (-0.5 * x * x).exp() * std::f64::consts::PI.powf(-0.25)
}

#[test]
fn matches_rodrigues_up_to_degree_50() {
    let polys = rodrigues_polys(50);
    let xs: Vec<f64> = (0..=64).map(|i| -8.0 + 0.25 * i as f64 + 0.0137).collect();
    for (k, poly) in polys.iter().enumerate() {
        for &x in &xs {
            let exact = oracle(poly, k, x);
            let got = eval_hermite_1d(k, x).unwrap();
            assert!(
                (got - exact).abs() <= 1e-12 * exact.abs() + 1e-15,
                "k={k} x={x}: {got} vs {exact}"
            );
        }
    }
}

#[test]
fn h5_at_1_3() {
    let exact = oracle(&rodrigues_polys(5)[5], 5, 1.3);
    assert!((eval_hermite_1d(5, 1.3).unwrap() - exact).abs() < 1e-14);
}

#[test]
fn gram_matrix_is_identity_to_degree_64() {
    let basis = build_basis(1, 64, UniformGrid::default_for_degree(1, 64).unwrap()).unwrap();
    let g = basis.gram_matrix();
    let m = basis.modes();
    for i in 0..m {
        for j in 0..m {
            let e = if i == j { 1.0 } else { 0.0 };
            assert!((g[i * m + j] - e).abs() < 1e-10, "G[{i},{j}] = {}", g[i * m + j]);
        }
    }
}

#[test]
fn synthesis_matches_naive_double_loop() {
    let n = 32;
    let basis = build_basis(2, n, UniformGrid::default_for_degree(2, n).unwrap()).unwrap();
    let f = SpectralField::random_band_limited(basis.clone(), 7, n, false);
    let g = synthesize(&f);
    let grid = basis.grid();
    for idx in (0..grid.len()).step_by(997) {
        let x = grid.point(idx);
        let mut s = Complex::new(0.0, 0.0);
        for a in 0..=n {
            for b in 0..=n {
                let c = f.coeff(&[a, b]).unwrap();
                s += c * eval_hermite_1d(a, x[0]).unwrap() * eval_hermite_1d(b, x[1]).unwrap();
            }
        }
        assert!((g.values()[idx] - s).norm() < 1e-12, "point {idx}");
    }
}

#[test]
fn roundtrip_up_to_degree_64() {
    for (dim, n) in [(1, 8), (1, 64), (2, 16), (2, 40)] {
        let basis = build_basis(dim, n, UniformGrid::default_for_degree(dim, n).unwrap()).unwrap();
        let f = SpectralField::random_band_limited(basis.clone(), 3, n, false);
        let back = project(&synthesize(&f), basis).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-10, "d={dim} N={n}");
    }
}
