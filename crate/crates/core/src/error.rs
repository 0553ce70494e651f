use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("constant term {0:e} is below tolerance; series is not invertible")]
    ZeroConstantTerm(f64),
    #[error("evaluation at a pole of the series")]
    EvalAtPole,
    #[error("numeric overflow: {0}")]
    NumericOverflow(String),
    #[error("Gamma function pole at z = {0}")]
    GammaPole(String),
    #[error("argument {0} lies on the branch cut [1, inf)")]
    CutViolation(String),
    #[error("argument {0} is outside the implemented continuation region")]
    OutOfRegion(String),
    #[error("non-generic parameters: {0}")]
    NonGenericParams(String),
    #[error("singular time: {0}")]
    SingularTime(String),
    #[error("degenerate lambda: roots coincide within {0:e}")]
    DegenerateLambda(f64),
    #[error("singularities collide: {0}")]
    CollidingSingularities(String),
    #[error("unsupported limit equation: {0}")]
    UnsupportedLimit(String),
    #[error("{0} is not a singular point of the equation")]
    NotASingularity(String),
    #[error("evaluation at a singular point {0}")]
    EvalAtSingularity(String),
    #[error("integrator failed: {0}")]
    StepFailure(String),
    #[error("loop path passes within {distance:e} of singularity {at} (margin {margin:e})")]
    PathTooClose {
        at: String,
        distance: f64,
        margin: f64,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
