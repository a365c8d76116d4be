use thiserror::Error;

/// Crate-wide error type.
///
/// Variants split into two broad categories used by the CLI for exit codes:
/// input/validation errors (exit 1) and resource-cap errors (exit 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension map is not monotone under inclusion: dims[{subset:#b}] = {inner} < dims[{superset:#b}] = {outer}")]
    NonMonotoneDims {
        subset: u32,
        superset: u32,
        inner: usize,
        outer: usize,
    },

    #[error("not a classical series: coefficient of t^{0} is {1}")]
    NotClassical(usize, String),

    #[error("series has constant term {0}, expected 1")]
    NonUnitConstantTerm(String),

    #[error("number field validation failed: {0}")]
    FieldValidation(String),

    #[error("branch validation failed: {0}")]
    BranchValidation(String),

    #[error("graph data validation failed: {0}")]
    GraphValidation(String),

    #[error("valuation result exceeds cap {0}")]
    CapExceeded(usize),

    #[error("curvette genericity check failed after {0} retries: {1}")]
    GenericityFailure(usize, String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("oracle unavailable for this input: {0}")]
    OracleUnavailable(String),

    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) | Error::CapExceeded(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
