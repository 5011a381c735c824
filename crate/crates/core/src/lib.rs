//! Fractional Hermite heat semigroups `e^{-tH^β}`, `H = -Δ + |x|²`, in one and
//! two space dimensions.
//!
//! The crate provides three independent routes for the propagator:
//!
//! * [`propagator::apply_spectral`]: the exact spectral multiplier
//!   `e^{-t(2|α|+d)^β}` on Hermite coefficients, for any `β > 0`;
//! * [`propagator::MehlerEngine`]: the Mehler kernel written as a Gaussian
//!   convolution on a uniform grid (`β = 1`);
//! * [`propagator::apply_subordination`]: Bochner subordination of `e^{-sH}`
//!   against the ½-stable subordinator density (`β = 1/2`).
//!
//! On top of these sit Lebesgue-norm decay scans ([`norms`]), a Duhamel
//! fixed-point solver for `∂_t u + H^β u = |u|^{γ-1}u` ([`nonlinear`]), and
//! space-time norm checks for Strichartz-type bounds ([`strichartz`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

// Modules import `num_traits::Float` for float math under `no_std`; when a
// dependency links std, the inherent methods take over and the import goes
// unused, hence the `allow` on those imports.

pub mod error;
pub mod hermite;
pub mod nonlinear;
pub mod norms;
pub mod propagator;
pub mod quadrature;
pub mod special;
pub mod strichartz;

pub use error::{Error, Result};
pub use hermite::{
    build_basis, eigenvalue_of, eval_hermite_1d, Eigenvalue, GridField, HermiteBasis,
    SpectralField, UniformGrid, MAX_DEGREE,
};
pub use norms::{lp_norm, LebesgueExponent};
pub use propagator::{PropagatorSpec, Route};

/// Complex scalar used for all field values.
pub type Complex = num_complex::Complex64;
