use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("vectors do not extend to a basis of Z^{0}")]
    NotExtendable(usize),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(BigInt),

    #[error("invalid lens parameters: {0}")]
    InvalidLensParameters(String),

    #[error("invalid characteristic function: {0}")]
    InvalidCharFn(String),

    #[error("quotient group is not cyclic (elementary divisors {divisors:?})")]
    NonCyclicQuotient { divisors: Vec<BigInt> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("nothing to reduce: |det| = {0}")]
    NothingToReduce(BigInt),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
