use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "singular element: {0} lies in O2 (a complex multiple of e1 or e2) and has no inverse"
    )]
    Singular(String),

    #[error("evaluation at s = {s} is within pole-proximity tolerance of a denominator root")]
    PoleProximity { s: Complex64 },

    #[error("invalid image function: {0}")]
    InvalidImage(String),

    #[error("point outside the region of convergence: Re(xi{component}) = {re} is not > k = {k}")]
    ConvergenceRegion { component: u8, re: f64, k: f64 },

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("inversion did not converge after {refinements} refinements (last = {last}, previous = {previous})")]
    InversionConvergence {
        last: Complex64,
        previous: Complex64,
        refinements: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("invalid pole {pole}: not a root of the denominator")]
    InvalidPole { pole: Complex64 },

    #[error("unknown transform pair id `{0}`")]
    UnknownPair(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors caused by bad input rather than by a numerical engine.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::Domain(_) | Error::UnknownPair(_) | Error::Parse(_)
        )
    }
}
