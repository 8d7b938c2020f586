use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radius {radius} exceeds cap {cap}")]
    CapExceeded { radius: usize, cap: usize },
    #[error("class ball at radius {radius} exceeds {limit} elements")]
    BallTooLarge { radius: usize, limit: usize },
    #[error("quadrature did not converge after {subdivisions} subdivisions (partial value {partial:e}, error estimate {error:e})")]
    Quadrature {
        subdivisions: usize,
        partial: f64,
        error: f64,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Quadrature { .. } | Error::BallTooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
