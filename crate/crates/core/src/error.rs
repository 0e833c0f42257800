use thiserror::Error;

/// Errors raised by geometric constructions and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("index {index} out of range (valid: {valid})")]
    IndexOutOfRange { index: usize, valid: String },
    #[error("degenerate triangle (area {area:e})")]
    DegenerateTriangle { area: f64 },
    #[error("degenerate segment at vertex {0}")]
    DegenerateSegment(usize),
    #[error("degenerate vector: {0}")]
    DegenerateVector(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("nesting violated: vertex {vertex} of A is not strictly inside B")]
    NestingViolation { vertex: usize },
    #[error("height must be positive, got {0}")]
    DegenerateHeight(f64),
    #[error("arccos argument {0} outside [-1, 1]")]
    DomainError(f64),
    #[error("convexity violation: {0}")]
    ConvexityViolation(String),
    #[error("invalid opening at vertex {vertex}: angle {angle} exceeds pi")]
    InvalidOpening { vertex: usize, angle: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("edge {0} is not a lateral band edge")]
    InvalidCutEdge(usize),
    #[error("witness failed re-verification: {0}")]
    UnverifiedWitness(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("placement failed after {attempts} attempts")]
    PlacementFailure { attempts: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
