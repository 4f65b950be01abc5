use thiserror::Error;

/// Errors surfaced by the library. The CLI maps `Input` and `Refused` to exit
/// code 1 and `Internal` to exit code 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("search refused: {0}")]
    Refused(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Input(format!($($arg)*))
    };
}

pub(crate) use input_err;
