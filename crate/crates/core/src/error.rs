use thiserror::Error;

use crate::exact::Rational;

/// Errors raised by the construction, verification and evaluation layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    CycloDivisionByZero,

    #[error("division by zero")]
    DivisionByZero,

    /// A construction parameter fails one of the admissibility inequalities.
    /// The payload names the violated condition, e.g. `r < a/(3N)`.
    #[error("{0} violated")]
    InvalidParams(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Exact division by `1 - z` left a remainder: `P_{k-1,1}(1) != 0`.
    #[error("P_{{k-1,1}}(1) \u{2260} 0 at level k = {k}")]
    InexactDivision { k: usize },

    #[error("non-integer entry s[{k}][{i}] = {value}")]
    NonIntegerEntry { k: usize, i: usize, value: Rational },

    #[error("product entry ({row}, {col}) is not a rational number")]
    NonRationalEntry { row: usize, col: usize },

    #[error("singular evaluation system after {attempts} attempts")]
    SingularSystem { attempts: usize },

    #[error("divergent: {0}")]
    Divergent(String),

    #[error("insufficient decay: {0}")]
    InsufficientDecay(String),

    #[error("criterion hypotheses fail: {0}")]
    CriterionHypotheses(String),

    #[error("a too small for N: {0}")]
    ATooSmall(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
