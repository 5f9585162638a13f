use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A finite input produced a value outside the range of `f64`.
    #[error("{function}(n = {order}, x = {x}) overflows f64")]
    Overflow {
        function: &'static str,
        order: u32,
        x: f64,
    },

    #[error("truncation unreachable: retained mass misses 1 by {deficit:e}, tolerance {tolerance:e}")]
    TruncationUnreachable { deficit: f64, tolerance: f64 },

    #[error("grid too small: mode extends to {required} w0 but only {available} w0 is usable")]
    GridTooSmall { required: f64, available: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Whether the error reflects a numerical limit rather than a bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow { .. } | Error::TruncationUnreachable { .. } | Error::GridTooSmall { .. }
        )
    }
}
