use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("numeric failure: {message}")]
    Numeric {
        message: String,
        /// Tolerance actually reached, when the failure is a convergence failure.
        achieved_tolerance: Option<f64>,
    },

    /// A bound or estimate whose precondition cannot be certified.
    #[error("refused precondition: {0}")]
    Refused(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric {
            message: msg.into(),
            achieved_tolerance: None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
