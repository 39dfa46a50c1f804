use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("`{first}` and `{second}` are not composable")]
    NotComposable { first: String, second: String },
    #[error("path `{0}` is zero in the algebra")]
    ZeroPath(String),
    #[error("presentation is not a finite-dimensional gentle algebra: {0}")]
    NotGentle(String),
    #[error("invalid walk literal: {0}")]
    WalkLiteral(String),
    #[error("expected a walk of kind {expected}, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("band parameter must be a nonzero scalar")]
    ZeroLambda,
    #[error("band multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("reduction failed: {0}")]
    Reduction(String),
    #[error("invalid scalar `{0}`")]
    Scalar(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownArrow(_) => "unknown_arrow",
            Error::Duplicate(_) => "duplicate",
            Error::NotComposable { .. } => "not_composable",
            Error::ZeroPath(_) => "zero_path",
            Error::NotGentle(_) => "not_gentle",
            Error::WalkLiteral(_) => "walk_literal",
            Error::WrongKind { .. } => "wrong_kind",
            Error::ZeroLambda => "zero_lambda",
            Error::ZeroMultiplicity => "zero_multiplicity",
            Error::Truncation(_) => "truncation",
            Error::Precondition(_) => "precondition",
            Error::Reduction(_) => "reduction",
            Error::Scalar(_) => "scalar",
        }
    }
}
