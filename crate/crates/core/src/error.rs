use thiserror::Error;

/// Errors raised by the library.
///
/// Verification failures are not errors: they are reported through
/// [`VerificationReport`](crate::report::VerificationReport).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A substitution whose image is not a unit monomial.
    #[error("unsupported substitution: {0}")]
    UnsupportedSubstitution(String),

    /// A result that must be a polynomial (or power series) came out with
    /// negative exponents, or another internal consistency check tripped.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    /// An enumeration or adaptive computation exceeded its budget.
    #[error("budget exhausted after {visited} steps (cap {cap}): {progress}")]
    Budget { visited: u64, cap: u64, progress: String },

    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
