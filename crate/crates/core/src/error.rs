use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure failed to converge or overflowed.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The requested bound state does not exist for these parameters.
    #[error("no bound state with n = {n}, l = {l}")]
    NoSuchState { n: usize, l: u32 },
    /// The requested normalization convention does not apply to this state.
    #[error("unsupported normalization convention: {0}")]
    UnsupportedConvention(String),
    /// Malformed input file or configuration.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
