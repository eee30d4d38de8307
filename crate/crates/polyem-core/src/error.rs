use thiserror::Error;

/// Errors surfaced by the exact pipeline.
///
/// Genericity failures carry a human-readable description of the offending
/// subspace so callers (and the CLI) can report which face broke the
/// complement-map domain condition.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("mismatched variable sets: {0}")]
    MismatchedVariables(String),
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("series is not divisible by the linear form (genuine pole)")]
    GenuinePole,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("not a face of the given polyhedron")]
    NotAFace,
    #[error("complement-map genericity failure: {0}")]
    GenericityFailure(String),
    #[error("expected a lattice cone: {0}")]
    NonLatticeCone(String),
    #[error("pole of order > 1 along the hyperplane")]
    HigherOrderPole,
    #[error("facet span must have codimension 1, got codimension {0}")]
    WrongCodimension(usize),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("enumeration size guard exceeded: {candidates} candidate points (limit {limit})")]
    SizeGuard { candidates: u128, limit: u128 },
    #[error("operator order {order} is insufficient for degree {degree}")]
    InsufficientOrder { order: usize, degree: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
