use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("series has non-unit constant term")]
    NonUnitSeries,
    #[error("degenerate trivector: {0}")]
    DegenerateTrivector(String),
    #[error("inconsistent trivector: {0}")]
    InconsistentForm(String),
    #[error("relation is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("non-quadratic relation present: {0}")]
    NotQuadratic(String),
    #[error("unknown catalog entry `{name}`; available: {available}")]
    UnknownEntry { name: String, available: String },
    #[error("groebner basis only complete through degree {complete}, {requested} requested")]
    Truncated { complete: usize, requested: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("algebra is not finite dimensional below degree {0}")]
    NotArtinian(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
