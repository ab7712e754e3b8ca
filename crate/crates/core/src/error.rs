use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("term cap of {cap} reached before the series converged")]
    TermCapExceeded { cap: u64 },

    #[error("series does not converge: {0}")]
    NonConvergent(String),

    #[error("polynomial comes within {min:e} of zero on the torus")]
    NearZeroOnTorus { min: f64 },

    #[error("leading power {0} is not a nonnegative integer")]
    FractionalLeadingPower(String),

    #[error("L-series of weight {weight} diverges at s = {s}")]
    Diverges { s: i64, weight: u32 },

    #[error("functional equation data inconsistent: values differ by {spread:e}")]
    InconsistentFunctionalEquation { spread: f64 },

    #[error("not enough coefficients: need {needed}, have {have}")]
    InsufficientCoefficients { needed: usize, have: usize },

    #[error("coefficient at index {0} overflows 64 bits")]
    CoefficientOverflow(usize),

    #[error("coefficient a_{n} = {coeff} violates the Deligne bound")]
    DeligneViolation { n: usize, coeff: i64 },

    #[error("unknown check id `{0}`")]
    UnknownId(String),

    #[error("coefficient cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
