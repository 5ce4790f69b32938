//! Crate-wide error type. Each variant corresponds to a distinct failure mode
//! of the public operations; internal invariant breaches panic instead.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("missing parameter for constant `{0}`: {1}")]
    MissingParameter(&'static str, &'static str),

    #[error("denominator vanishes identically under v = -s^-3")]
    SpecializationPole,

    #[error("degree {got} exceeds the configured bound {max}")]
    DegreeOverflow { got: i64, max: i64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix is not unimodular (determinant must be 1)")]
    NotUnimodular,

    #[error("bad input: {0}")]
    BadInput(String),

    #[error("the (0,0) curve has no defined module action")]
    UndefinedGenerator,

    #[error("tableau shape does not match the expression: {0}")]
    ShapeMismatch(String),

    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },

    #[error("type error: {0}")]
    TypeError(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
