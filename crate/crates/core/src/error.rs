use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// An input fell outside the domain of a function.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("unknown scenario '{0}' (built-in presets: sc1, sc4, sc6, sc9)")]
    NotFound(String),

    /// Malformed configuration text.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A configuration field is missing or violates its constraint.
    #[error("schema violation: field '{field}' {constraint} (value: {value})")]
    Schema {
        field: String,
        constraint: String,
        value: String,
    },

    /// The scenario resolves, but cannot be simulated as configured.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
