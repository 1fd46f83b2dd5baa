use thiserror::Error;

/// Errors raised by the library. A sequence dying is *not* an error; see
/// [`crate::EvalOutcome`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),

    #[error("invalid Golomb-like system: d_f + d_g must be positive (got {0})")]
    InvalidSystem(i64),

    #[error("empty initial condition")]
    EmptyInitialCondition,

    #[error("cap {cap} is smaller than the initial condition length {ic_len}")]
    CapTooSmall { cap: usize, ic_len: usize },

    #[error("arithmetic overflow at index {index}")]
    Overflow { index: u64 },

    #[error("value {value} at index {index} does not fit the compact 32-bit store")]
    CompactOverflow { index: u64, value: i64 },

    #[error("index {index} outside the defined range [{first}, {last}]")]
    OutOfRange { index: i64, first: i64, last: i64 },

    #[error("buffer is frozen")]
    Frozen,

    #[error("buffer exhausted: {0}")]
    BufferExhausted(String),

    #[error("sequence died at index {death_index}")]
    Dead { death_index: u64 },

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("window too short: {0}")]
    WindowTooShort(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("non-integer value used where an integer is required at index {index}")]
    NonInteger { index: u64 },

    #[error("i/o: {0}")]
    Io(String),

    /// The reader of our output went away, e.g. `metafib eval | head`.
    #[error("output closed")]
    OutputClosed,
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        match e.kind() {
            std::io::ErrorKind::BrokenPipe => Error::OutputClosed,
            _ => Error::Io(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{Error as IoError, ErrorKind};

    #[test]
    fn broken_pipe_is_distinguished() {
        assert_eq!(
            Error::from(IoError::from(ErrorKind::BrokenPipe)),
            Error::OutputClosed
        );
        assert!(matches!(
            Error::from(IoError::from(ErrorKind::NotFound)),
            Error::Io(_)
        ));
    }
}
