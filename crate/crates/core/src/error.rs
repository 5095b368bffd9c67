use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("t = {t} lies outside the tabulated range [{lo}, {hi}]")]
    Extrapolation { t: f64, lo: f64, hi: f64 },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("generator not integrable at dim {dim}: {reason}")]
    Divergence { dim: usize, reason: String },

    #[error("quadrature did not converge: estimate {estimate}, error {abs_error} after {subdivisions} subdivisions")]
    NonConvergent {
        estimate: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    #[error("scatter matrix is not positive definite (smallest eigenvalue {min_eigenvalue})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("parameter `{name}` = {value} is out of domain: {reason}")]
    ParameterDomain {
        name: String,
        value: f64,
        reason: String,
    },

    #[error("finite-difference step for `{name}` crosses the domain boundary")]
    StepBoundary { name: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error(
        "Fisher information matrix is singular or near-singular (condition estimate {condition:e})"
    )]
    SingularFim { condition: f64 },

    #[error("sampler construction failed: {0}")]
    Sampler(String),

    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
