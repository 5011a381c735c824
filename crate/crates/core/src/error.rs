use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported dimension {0}: only d = 1 and d = 2 are implemented")]
    UnsupportedDimension(usize),

    #[error("Hermite degree {degree} exceeds the supported cap {cap}")]
    UnsupportedDegree { degree: usize, cap: usize },

    #[error(
        "grid half-width {half_width} truncates h_{degree}: h_{degree}(L)^2 = {tail:e} exceeds 1e-14"
    )]
    TruncationRisk {
        degree: usize,
        half_width: f64,
        tail: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("spectral field belongs to a different Hermite basis")]
    BasisMismatch,

    #[error("grid field is sampled on a different grid")]
    GridMismatch,

    #[error("invalid propagator: {0}")]
    InvalidPropagator(String),

    #[error("grid spacing {spacing} does not resolve the Mehler kernel at t = {t} (need <= {required})")]
    Unresolved { t: f64, spacing: f64, required: f64 },

    #[error("{needed} Hermite modes needed per axis, above the cap {cap}")]
    ModesExceeded { needed: usize, cap: usize },

    #[error("quadrature did not converge: residual {residual:e}")]
    Convergence { residual: f64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("fit over the {regime} regime needs at least {required} points, got {points}")]
    Fit {
        regime: &'static str,
        points: usize,
        required: usize,
    },

    #[error("Picard iteration failed to contract (factor {factor:.3e} after {iterations} iterations)")]
    PicardNonConvergence { factor: f64, iterations: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inadmissible exponents: {0}")]
    Admissibility(String),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. }
                | Error::PicardNonConvergence { .. }
                | Error::Unresolved { .. }
                | Error::ModesExceeded { .. }
                | Error::Fit { .. }
        )
    }
}
