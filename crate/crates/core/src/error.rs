use exactalg::AlgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("the form is not a homogeneous cubic")]
    NotCubic,
    #[error("singular cubic: {0}")]
    Singular(String),
    #[error("the point is not on the cubic")]
    PointNotOnX,
    #[error("the point is a singular point of the cubic")]
    SingularPoint,
    #[error("the spanning points are linearly dependent")]
    DegenerateSpan,
    #[error("the parameterization has a base point")]
    BasePoint,
    #[error("the curve does not lie on the cubic")]
    NotOnX,
    #[error("the curves have the same image")]
    EqualImages,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("cost guard: {estimated} candidates exceed the limit {limit}")]
    CostGuard { estimated: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, GeomError>;
