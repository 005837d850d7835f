use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicands differ: {0} vs {1}")]
    RadicandMismatch(String, String),
    #[error("invalid radicand {0}: must be a positive non-square integer")]
    InvalidRadicand(String),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("matrix does not have the [[a, b], [conj b, conj a]] shape")]
    MalformedShape,
    #[error("vector {0} has Lorentz norm {1}, expected a positive norm")]
    NonPositiveNorm(String, String),
    #[error("vector {0} is not isotropic")]
    NotIsotropic(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("result is not integral: {0}")]
    NonIntegral(String),
    #[error("vector {0} cannot be rescaled to the de Sitter space over the rationals")]
    NotRationalScalable(String),
    #[error("degenerate pair: both endpoints equal {0}")]
    DegeneratePair(String),
    #[error("points coincide: {0}")]
    EqualPoints(String),
    #[error("euclid parameters {0}, {1} are not coprime")]
    NonCoprime(String, String),
    #[error("interval [{0}, {1}] is not unimodular (inner product {2})")]
    NotUnimodularPair(String, String, String),
    #[error("a partition needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("duplicate vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("vertices are not counterclockwise cyclically ordered (violation at index {0})")]
    CyclicOrder(usize),
    #[error("gap {index} is not unimodular: {source}")]
    NonUnimodularGap { index: usize, source: Box<Error> },
    #[error("index {0} out of range for {1} intervals")]
    IndexOutOfRange(usize, usize),
    #[error("value {0} out of range {1}")]
    OutOfRange(String, String),
    #[error("iteration cap of {0} steps exceeded")]
    IterationCap(usize),
    #[error("symbolic word is not admissible")]
    NotAdmissible,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("invalid symbolic word: {0}")]
    InvalidWord(String),
    #[error("float iteration lost precision at depth {achieved} (requested {requested})")]
    PrecisionLoss { achieved: usize, requested: usize },
    #[error("parameter error: {0}")]
    InvalidParameter(String),
    #[error("unknown built-in partition '{0}'")]
    UnknownPartition(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
