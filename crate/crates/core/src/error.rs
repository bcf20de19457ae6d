use thiserror::Error;

/// Errors produced by the geometry, containment and closed-form routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("support function queried with a zero direction")]
    ZeroDirection,

    #[error("origin is not strictly interior to the polygon")]
    OriginNotInterior,

    #[error("linear program failed: {0}")]
    SolverFailure(String),

    #[error("degenerate shape: {0}")]
    DegenerateShape(String),

    #[error("polygon is neither a triangle nor a parallelogram ({0} vertices)")]
    NotATriangleOrParallelogram(usize),

    #[error("polygon is not a parallelogram")]
    NotAParallelogram,

    #[error("parameters ({0}, {1}) are outside the family's domain")]
    OutOfDomain(f64, f64),

    #[error("value {value} is outside the admissible range [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
