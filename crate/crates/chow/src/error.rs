use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("unbound parameter `{0}`")]
    Unbound(String),
    #[error("cannot evaluate a class with a nonzero grade-1 part")]
    GradeOne,
    #[error("class mixes grade 0 and grade 2 terms")]
    Inhomogeneous,
    #[error("product mixes the symmetric-square and blow-up models: {0}")]
    ModelMismatch(String),
    #[error("evaluation produced a non-integer value {0}")]
    NonInteger(String),
    #[error("invalid binding: {0}")]
    Binding(String),
}

pub type Result<T> = std::result::Result<T, ChowError>;
