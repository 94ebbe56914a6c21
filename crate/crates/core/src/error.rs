use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown object: {0}")]
    UnknownObject(String),
    #[error("unknown morphism: {0}")]
    UnknownMorphism(String),
    #[error("duplicate identifier: {0}")]
    DuplicateName(String),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("not universal: {0}")]
    NotUniversal(String),
    #[error("missing lift for ({0}, {1})")]
    MissingLift(String, String),
    #[error("base is not cocartesian: {0}")]
    BaseNotCocartesian(String),
    #[error("comparison failed: {0}")]
    ComparisonFailed(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("universe overflow: {0}")]
    UniverseOverflow(String),
    #[error("law failure: {0}")]
    LawFailure(String),
    #[error("unsupported variance: {0}")]
    Variance(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
