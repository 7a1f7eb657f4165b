use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dependency graph has an oriented cycle through e_{0}")]
    CycleFound(usize),

    #[error("superdiagonal entry ({0},{1}) is zero")]
    ZeroSuperdiagonal(usize, usize),

    #[error("dim(E^2) = {rank}, maximal nilindex needs {expected}")]
    NotMaximalNilindex { rank: usize, expected: usize },

    #[error("structure matrix is not in canonical form: {0}")]
    NotCanonical(String),

    #[error("basis change is not natural: e'_{0} e'_{1} != 0")]
    NotNatural(usize, usize),

    #[error("basis change is singular")]
    SingularBasisChange,

    #[error("index set is empty")]
    EmptyIndexSet,

    #[error("operator is not upper triangular: r_({0},{1}) != 0")]
    NotUpperTriangular(usize, usize),

    #[error("scale factor must be nonzero")]
    ZeroScale,

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("orbit hits the pole -1/2")]
    Pole,

    #[error("alpha = {0} is not a rational periodic point of f")]
    InvalidAlpha(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("grid needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("unsupported weight {0}; classification needs 0 or 1")]
    UnsupportedWeight(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, used as the `error` field of CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Parse(_) => "Parse",
            Error::CycleFound(_) => "CycleFound",
            Error::ZeroSuperdiagonal(..) => "ZeroSuperdiagonal",
            Error::NotMaximalNilindex { .. } => "NotMaximalNilindex",
            Error::NotCanonical(_) => "NotCanonical",
            Error::NotNatural(..) => "NotNatural",
            Error::SingularBasisChange => "SingularBasisChange",
            Error::EmptyIndexSet => "EmptyIndexSet",
            Error::NotUpperTriangular(..) => "NotUpperTriangular",
            Error::ZeroScale => "ZeroScale",
            Error::InvalidFamily(_) => "InvalidFamily",
            Error::Pole => "Pole",
            Error::InvalidAlpha(_) => "InvalidAlpha",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::UnsupportedWeight(_) => "UnsupportedWeight",
        }
    }
}
