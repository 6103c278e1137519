use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A mathematical condition failed; `witness` is a human-readable certificate.
    #[error("{what}: {witness}")]
    Violation { what: String, witness: String },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }

    pub fn violation(what: impl Into<String>, witness: impl Into<String>) -> Error {
        Error::Violation { what: what.into(), witness: witness.into() }
    }

    /// Process exit code: 1 for failed mathematical checks, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Violation { .. } => 1,
            Error::Input(_) | Error::Parse { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
