use thiserror::Error;

use crate::exactpoly::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A bracket entry needed for an evaluation lies beyond the truncation.
    #[error("bracket [{0}_λ {1}] is beyond the truncation")]
    TruncationExceeded(String, String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("generator `{0}` has no action matrix")]
    MissingAction(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("polynomial {0} does not solve the equation")]
    NotASolution(String),
    #[error("generator 0 does not span a Virasoro subalgebra: [L0_λ L0] = {0}")]
    NotVirasoroAtZero(String),
    #[error("standing hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("bracket p_{{0,{index}}} = {poly} is not of the form ∂ + aλ + b")]
    MalformedBracket { index: usize, poly: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate definition of `{0}`")]
    DuplicateDefinition(String),
}

impl Error {
    /// A parse error from an expression parsed as a standalone string.
    pub fn from_expr(e: ParseError) -> Self {
        Error::Parse { line: 1, column: e.offset + 1, message: e.message }
    }
}
