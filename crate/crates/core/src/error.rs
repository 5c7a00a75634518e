//! Error type shared by every module of the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Error conditions raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    Domain(String),
    /// An iterative routine failed to reach its target accuracy.
    NonConvergence {
        what: &'static str,
        achieved: f64,
        target: f64,
    },
    /// A value exceeded the representable floating-point range.
    Overflow(&'static str),
    /// The requested configuration is outside what this routine supports.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence {
                what,
                achieved,
                target,
            } => write!(
                f,
                "{what} did not converge: achieved {achieved:.3e}, target {target:.3e}"
            ),
            Error::Overflow(what) => write!(f, "overflow in {what}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
