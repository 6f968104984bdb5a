use thiserror::Error;

use crate::quiver::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("presentation is not certified finite-dimensional within maxlen {maxlen}: {remaining} irreducible paths of length {maxlen} remain")]
    NotAdmissibleWithinBound { maxlen: usize, remaining: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("idempotent has an empty vertex set")]
    EmptyIdempotent,

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,

    #[error("bimodule axioms violated: {0}")]
    BimoduleAxioms(String),

    #[error("outside the supported scope: {0}")]
    ScopeViolation(String),

    #[error("not applicable: {0}")]
    Inapplicable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
