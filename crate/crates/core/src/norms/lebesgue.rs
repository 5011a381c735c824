use alloc::format;
use core::fmt;
use core::str::FromStr;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermite::{GridField, UniformGrid};
use crate::Complex;

/// A Lebesgue exponent `p ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LebesgueExponent {
    Finite(f64),
    Infinity,
}

impl LebesgueExponent {
    /// `f64::INFINITY` maps to [`LebesgueExponent::Infinity`].
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Self::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Self::Finite(p))
        } else {
            Err(Error::Domain(format!("Lebesgue exponent must lie in [1, inf], got {p}")))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Self::Finite(p) => p,
            Self::Infinity => f64::INFINITY,
        }
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Self::Finite(p) => 1.0 / p,
            Self::Infinity => 0.0,
        }
    }

    /// Exponent with reciprocal `r ∈ [0, 1]`.
    pub fn from_reciprocal(r: f64) -> Result<Self> {
        if r == 0.0 {
            Ok(Self::Infinity)
        } else if r > 0.0 && r <= 1.0 {
            Ok(Self::Finite(1.0 / r))
        } else {
            Err(Error::Domain(format!("reciprocal exponent {r} outside [0, 1]")))
        }
    }

    /// Hölder conjugate `p'`.
    pub fn conjugate(self) -> Self {
        match self {
            Self::Infinity => Self::Finite(1.0),
            Self::Finite(p) if p == 1.0 => Self::Infinity,
            Self::Finite(p) => Self::Finite(p / (p - 1.0)),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinity)
    }
}

impl fmt::Display for LebesgueExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for LebesgueExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "infinity" | "∞" => Ok(Self::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::Domain(format!("not a Lebesgue exponent: `{other}`")))
                .and_then(Self::new),
        }
    }
}

/// Trapezoid-rule `L^p` norm of grid samples; `max |f_j|` for `p = ∞`.
pub fn lp_norm(f: &GridField, p: LebesgueExponent) -> f64 {
    lp_norm_values(f.grid(), f.values(), p)
}

/// [`lp_norm`] for raw samples on `grid` (row-major, length `n^d`).
pub fn lp_norm_values(grid: &UniformGrid, values: &[Complex], p: LebesgueExponent) -> f64 {
    lp_norm_moduli(grid, values.iter().map(|v| v.norm()), p)
}

/// [`lp_norm`] for nonnegative moduli given in row-major grid order.
pub fn lp_norm_moduli<I>(grid: &UniformGrid, moduli: I, p: LebesgueExponent) -> f64
where
    I: Iterator<Item = f64> + Clone,
{
    let max = moduli.clone().fold(0.0, f64::max);
    let p = match p {
        LebesgueExponent::Infinity => return max,
        LebesgueExponent::Finite(p) => p,
    };
    if max == 0.0 {
        return 0.0;
    }
    // Scaled by the maximum so that large p cannot overflow.
    let w = grid.axis_weights();
    let n = grid.points_per_axis();
    let sum: f64 = match grid.dim() {
        1 => moduli.zip(&w).map(|(m, w)| w * (m / max).powf(p)).sum(),
        _ => moduli
            .enumerate()
            .map(|(i, m)| w[i / n] * w[i % n] * (m / max).powf(p))
            .sum(),
    };
    max * sum.powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::hermite::{build_basis, SpectralField};
    use core::f64::consts::PI;

    fn ground() -> GridField {
        let b = build_basis(1, 4, UniformGrid::new(1, 10.0, 401).unwrap()).unwrap();
        SpectralField::unit(b, &[0]).unwrap().synthesize()
    }

    #[test]
    fn ground_state_norms() {
        let f = ground();
        assert!((lp_norm(&f, LebesgueExponent::Finite(2.0)) - 1.0).abs() < 1e-8);
        assert!((lp_norm(&f, LebesgueExponent::Infinity) - PI.powf(-0.25)).abs() < 1e-15);
        // ∫ π^{-1/4} e^{-x²/2} dx = π^{-1/4} √(2π)
        let l1 = PI.powf(-0.25) * (2.0 * PI).sqrt();
        assert!((lp_norm(&f, LebesgueExponent::Finite(1.0)) - l1).abs() < 1e-8);
    }

    #[test]
    fn homogeneous() {
        let f = ground();
        for p in [1.0, 2.5, 40.0] {
            let p = LebesgueExponent::Finite(p);
            let a = lp_norm(&f.scaled(Complex::new(0.0, -3.0)), p);
            assert!((a - 3.0 * lp_norm(&f, p)).abs() < 1e-12 * a);
        }
    }

    #[test]
    fn parse_and_conjugate() {
        assert_eq!("inf".parse::<LebesgueExponent>().unwrap(), LebesgueExponent::Infinity);
        assert_eq!("2".parse::<LebesgueExponent>().unwrap(), LebesgueExponent::Finite(2.0));
        assert!("0.5".parse::<LebesgueExponent>().is_err());
        assert_eq!(LebesgueExponent::Finite(1.0).conjugate(), LebesgueExponent::Infinity);
        assert_eq!(LebesgueExponent::Finite(4.0).conjugate(), LebesgueExponent::Finite(4.0 / 3.0));
        assert_eq!(LebesgueExponent::Infinity.to_string(), "inf");
    }
}
