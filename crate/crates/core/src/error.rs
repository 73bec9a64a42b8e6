use thiserror::Error;

/// Errors raised by the decision-diagram engine, the circuit front end and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric precondition failed (non-finite value, division by zero, non-unitary base).
    #[error("numeric domain error: {0}")]
    NumericDomain(String),

    /// Levels of operands do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// A caller-supplied argument is out of range or inconsistent.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Malformed OpenQASM input.
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Well-formed OpenQASM input that refers to something invalid.
    #[error("semantic error at {line}:{column}: {message}")]
    Semantic {
        line: usize,
        column: usize,
        message: String,
    },

    /// A circuit cannot be written in the supported OpenQASM subset.
    #[error("serialization error: {0}")]
    Serialization(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
