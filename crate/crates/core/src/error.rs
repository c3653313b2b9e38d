use thiserror::Error;

/// Errors produced by sample construction, functional evaluation, and the
/// estimators built on top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("non-finite observation at position {index}")]
    NonFiniteValue { index: usize },

    #[error("quantile level {level} outside (0, 1]")]
    OutOfRange { level: f64 },

    #[error("need at least {needed} observations, got {n}")]
    TooFewSamples { n: usize, needed: usize },

    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("bootstrap needs at least 2 resamples, got {b}")]
    InvalidB { b: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("model has finite moments only below order {have}, functional needs order {need}")]
    InsufficientMoments { have: f64, need: f64 },

    #[error("quadrature could not reach tolerance {tol:e} (error estimate {estimate:e})")]
    QuadratureFailure { tol: f64, estimate: f64 },

    #[error("functional produced a non-finite value")]
    NonFiniteResult,

    #[error("need at least 2 distinct x values to fit a line")]
    TooFewPoints,

    #[error("unknown functional {0:?}")]
    UnknownFunctional(String),

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error("cannot parse observation on line {line}: {content:?}")]
    MalformedData { line: usize, content: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
