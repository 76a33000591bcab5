use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("columns are linearly dependent")]
    RankDeficient,

    #[error("polytope has no points")]
    EmptyPolytope,

    #[error("interpolated polynomial disagrees with direct count at t = {t}: expected {expected}, counted {counted}")]
    InterpolationGuardFailed {
        t: u64,
        expected: String,
        counted: String,
    },

    #[error("{count} generators exceed the limit of {limit}")]
    TooManyGenerators { count: usize, limit: usize },

    #[error("no witness found after {attempts} attempts")]
    BudgetExhausted { attempts: u64 },

    #[error("unknown corpus entry `{0}`")]
    UnknownName(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
