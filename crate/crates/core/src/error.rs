use thiserror::Error;

/// Failure modes shared by the library and the CLI.
///
/// The CLI maps these onto process exit codes: `Parse` is 2, `Usage` and
/// `Domain` are 3, `Refusal` is 4, `Integrity` is 5.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input (JSON syntax, bad encodings, unreadable files).
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally valid input outside the supported ranges or shapes.
    #[error("usage error: {0}")]
    Usage(String),

    /// Input on which the requested operation is mathematically undefined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A globalization step hit a genuine cohomological obstruction.
    ///
    /// `entry` is the 1-based matrix position whose reduction failed and
    /// `obstruction` the nonzero class in the quotient line that blocks it.
    #[error("globalization refused at entry ({}, {}): obstruction class {obstruction}", entry.0, entry.1)]
    Refusal { entry: (usize, usize), obstruction: u64 },

    /// An internal cross-check failed; results cannot be trusted.
    #[error("integrity failure: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
