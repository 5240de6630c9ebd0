use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural precondition on the configuration is violated
    /// (grids, brackets, unreachable cut radii, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical procedure failed to converge or produced
    /// non-representable values.
    #[error("numerical failure: {0}")]
    Numerics(String),

    /// A parameter search ran out of candidates. The least-violating
    /// candidate and its diagnostics are attached.
    #[error("parameter search exhausted: {message}")]
    SearchExhausted {
        message: String,
        best: Box<crate::positivity::PositivityReport>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
