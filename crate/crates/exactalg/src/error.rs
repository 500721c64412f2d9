use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tower level {requested} exceeds the configured budget {budget}")]
    Budget { requested: u32, budget: u32 },
    #[error("field of order {p}^{k} is too large for table arithmetic")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("exact division failed")]
    InexactDivision,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, AlgError>;
