use thiserror::Error;

/// Errors raised by the exact and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("labels belong to different central charges (p = {0} and p = {1})")]
    MismatchedP(u32, u32),

    #[error("positive mode L({0}) in a vector passed to the Zhu reduction")]
    PositiveMode(i64),

    #[error("spectrum does not factor over the candidate weights; remainder {0}")]
    UnfactoredRemainder(String),

    #[error("{0} is not a generator (expected L:r,1 or L:1,2)")]
    NonGenerator(String),

    #[error("negative multiplicity {mult} for {label} in recursive product {context}")]
    NegativeMultiplicity {
        label: String,
        mult: i64,
        context: String,
    },

    #[error("monodromy exponent {0} is not an integer")]
    NotInteger(String),

    #[error("multiplicity {mult} of {label} is not divisible by {divisor}")]
    NonDivisible {
        label: String,
        mult: u64,
        divisor: u64,
    },

    #[error("numerical routes disagree: {a} vs {b} (tolerance {tol:e})")]
    RouteMismatch { a: f64, b: f64, tol: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
