use thiserror::Error;

/// Errors raised by the text formats in [`crate::io`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: loop arc at vertex {vertex}")]
    LoopArc { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("header declares {declared} arcs but the body has {found}")]
    ArityMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop arc at vertex {vertex}")]
    LoopArc { vertex: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("arc {0} -> {1} is not present")]
    ArcNotPresent(usize, usize),
    #[error("a product needs at least one factor")]
    EmptyFactorList,
    #[error("graph has {n} vertices, above the limit of {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("time budget exceeded")]
    TimeBudgetExceeded,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not thin; compute its quotient by the S relation first (`quotient`)")]
    NotThin,
    #[error("blow-up base graph is not thin")]
    NonThinQuotient,
    #[error("multiplicity of class {class} is zero")]
    ZeroMultiplicity { class: usize },
    #[error("expected {expected} multiplicities, got {found}")]
    MultiplicityLength { expected: usize, found: usize },
    #[error("invalid edge coloring: {0}")]
    InvalidColoring(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
