use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of the function it was passed to.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no test points supplied")]
    EmptyPoints,

    /// A sample whose spread is zero (or whose estimates are singular) cannot
    /// be tested. Simulations count these replicates instead of failing.
    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("design matrix is rank deficient")]
    RankDeficient,

    #[error("sample too small: {0}")]
    SampleSize(String),

    /// Input data did not match the schema the model expects.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures caused by the caller's input rather than by the
    /// environment (I/O, serialization of output).
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
