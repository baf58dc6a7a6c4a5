use thiserror::Error;

/// Everything that can go wrong between reading an input file and printing a
/// classification. `BoundExceeded` is the only recoverable-by-retry variant
/// (raise the bound); `InternalInconsistency` means an invariant the library
/// guarantees was observed broken and the result must not be trusted.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("coroot pairing is not integral: {0}")]
    NotIntegral(String),

    #[error("not a recognizable finite type: {0}")]
    Unclassifiable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Validation(_) => 2,
            Error::BoundExceeded(_) => 3,
            Error::InternalInconsistency(_) | Error::NotIntegral(_) | Error::Unclassifiable(_) => {
                4
            }
        }
    }
}
