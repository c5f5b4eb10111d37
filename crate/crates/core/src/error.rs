use thiserror::Error;

/// Errors raised by the algebra kernel and the geometric layers built on it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable context mismatch: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("seed is not harmonic: sub-Laplacian = {0}")]
    NonHarmonicSeed(String),

    #[error("seed must be nonzero")]
    ZeroSeed,

    #[error("expected a polynomial, found {0}")]
    NotPolynomial(String),

    #[error("one-form is not closed: obstruction {0}")]
    NotClosed(String),

    #[error("point is too close to the singular locus (|den| = {0:e})")]
    NearSingular(f64),

    #[error("all {0} samples were rejected")]
    AllSamplesRejected(usize),

    #[error("chart transition undefined at zeta = 0")]
    ZetaZero,

    #[error("form is not horizontal")]
    NotHorizontal,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
