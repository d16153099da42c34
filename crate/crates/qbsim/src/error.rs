use std::path::PathBuf;

/// Crate-wide error type.
///
/// `InvalidInput` covers malformed or unphysical inputs (bad dimensions,
/// non-Hermitian operators, states failing density-matrix validation).
/// `NumericFailure` is reserved for iterative routines that did not
/// converge. `Io` carries the offending path.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
