//! Three routes to `e^{-tH^β}`: the spectral multiplier (any `β > 0`), the
//! Mehler kernel (`β = 1`), and Bochner subordination (`β = 1/2`).

mod fourier;
mod mehler;
mod spectral;
mod subordination;

use alloc::format;
use core::fmt;
use core::str::FromStr;

pub use fourier::{
    gaussian_fourier_selfcheck, gaussian_fourier_selfcheck_on, SELFCHECK_HALF_WIDTH,
    SELFCHECK_POINTS,
};
pub use mehler::{apply_mehler, MehlerEngine};
pub use spectral::apply_spectral;
pub use subordination::{
    apply_subordination, subordinator_density_half, SubordinationQuadrature, SubordinatorDensity,
};

use crate::error::{Error, Result};
use crate::hermite::{project, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Spectral,
    Mehler,
    Subordination,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Spectral => "spectral",
            Route::Mehler => "mehler",
            Route::Subordination => "subordination",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Route::Spectral),
            "mehler" => Ok(Route::Mehler),
            "subordination" => Ok(Route::Subordination),
            other => Err(Error::InvalidPropagator(format!("unknown route `{other}`"))),
        }
    }
}

/// One application of `e^{-tH^β}` by a given route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorSpec {
    beta: f64,
    t: f64,
    route: Route,
}

impl PropagatorSpec {
    pub fn new(beta: f64, t: f64, route: Route) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidPropagator(format!("beta must be positive, got {beta}")));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidPropagator(format!("t must be positive, got {t}")));
        }
        match route {
            Route::Mehler if beta != 1.0 => Err(Error::InvalidPropagator(format!(
                "the mehler route requires beta = 1, got {beta}"
            ))),
            Route::Subordination if beta != 0.5 => Err(Error::InvalidPropagator(format!(
                "the subordination route requires beta = 1/2, got {beta}"
            ))),
            _ => Ok(Self { beta, t, route }),
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// Applies the propagator; the Mehler route goes through the basis grid
    /// and back.
    pub fn apply(&self, f: &SpectralField) -> Result<SpectralField> {
        match self.route {
            Route::Spectral => Ok(apply_spectral(f, self.beta, self.t)),
            Route::Subordination => apply_subordination(f, self.t),
            Route::Mehler => {
                let out = apply_mehler(&f.synthesize(), self.t)?;
                project(&out, f.basis().clone())
            }
        }
    }
}
