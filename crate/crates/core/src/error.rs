use thiserror::Error;

use crate::series::Truncation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(Truncation, Truncation),

    #[error("exponential argument has a nonzero constant term")]
    NotNilpotent,

    #[error("tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("invalid slot pair {0}{1} for embedding")]
    InvalidSlots(usize, usize),

    #[error("expression error at {pos}: {msg}")]
    Expr { pos: usize, msg: String },

    #[error("braid parse error at {pos}: {msg}")]
    BraidParse { pos: usize, msg: String },

    #[error("invalid representation parameters: {0}")]
    InvalidParams(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("element is not invertible by order-by-order expansion")]
    NotInvertible,
}

pub type Result<T> = std::result::Result<T, Error>;
