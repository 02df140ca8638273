use thiserror::Error;

/// Errors raised by the codec, the bound machinery and the harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured resource cap (memory, codebook size) would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// `C_alpha - alpha * R` is negative, so the slack interval is empty.
    #[error("no slack at alpha = {alpha}: C_alpha - alpha*R = {slack:e}; bound is vacuous")]
    NoSlack { alpha: f64, slack: f64 },

    /// The supremum defining an exponent is infinite.
    #[error("unbounded supremum: {0}")]
    Unbounded(String),

    /// A quadratic-form matrix failed the leading-minor test.
    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    /// Adaptive quadrature hit its depth limit before reaching tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Invalid experiment configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
