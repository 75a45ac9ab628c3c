use thiserror::Error;

/// Errors raised by the combinatorial and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input violates a precondition (lane mismatch, inadmissible data, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A backward solve left the unit interval or produced the wrong orbit.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A numerical procedure failed to converge or to find the expected roots.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A lap or breakpoint budget was exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag used in error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Infeasible(_) => "infeasible",
            Error::Numeric(_) => "numeric",
            Error::Budget(_) => "budget",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
