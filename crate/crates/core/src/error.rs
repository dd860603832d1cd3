use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("associativity fails for basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    UnitViolation(usize),
    #[error("the trace-form radical needs characteristic 0; supply a radical candidate in prime characteristic")]
    CharPUnsupported,
    #[error("radical verification failed: {0}")]
    VerificationFailed(String),
    #[error("semisimple quotient does not split over the base field: {0}")]
    NotSplit(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("cochain indices do not compose: {0}")]
    IndexMismatch(String),
    #[error("structural map violation: {0}")]
    StructuralMapViolation(String),
    #[error("radical of the test ring is not nilpotent")]
    RadicalNotNilpotent,
    #[error("equivalence is only decided over rings with I(R)^2 = 0")]
    NilpotencyTooDeep,
    #[error("obstruction projection failed: {0}")]
    ObstructionProjectionFailure(String),
    #[error("deformation is not a pushforward of the versal family: {0}")]
    NotLiftable(String),
    #[error("hull truncated at degree {0} is not stable")]
    HullNotStable(usize),
    #[error("morphism check failed: {0}")]
    MorphismCheckFailed(String),
    #[error("graded map not well defined: {0}")]
    NotWellDefined(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
