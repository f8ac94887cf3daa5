use thiserror::Error;

/// Errors raised by the library. Validation failures are distinguished from
/// numeric failures so front ends can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow evaluating polynomial {index} at n = {n}")]
    Overflow { n: i64, index: usize },

    #[error("cost budget exceeded: estimated {estimate:.3e} operations (budget {budget:.3e})")]
    CostBudget { estimate: f64, budget: f64 },

    #[error("quadrature did not converge after {doublings} panel doublings (residual {residual:.3e})")]
    NonConvergence { doublings: u32, residual: f64 },
}

impl Error {
    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of the numerics themselves rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
