use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("duplicate incidence of variable {var} in clause {clause}")]
    DuplicateIncidence { var: usize, clause: usize },

    #[error("unsupported clause: {0}")]
    UnsupportedClause(String),

    #[error("inconsistent decoding: {0}")]
    Consistency(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dictionary: {0}")]
    Dictionary(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
