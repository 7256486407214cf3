use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node label `{0}`")]
    UnknownLabel(String),

    #[error("invalid node label `{label}`: {reason}")]
    InvalidLabel { label: String, reason: &'static str },

    #[error("self-loops are not allowed (node `{0}`)")]
    SelfLoop(String),

    #[error("node set does not belong to this system")]
    ForeignNodeSet,

    #[error("systems do not match: {0}")]
    SystemMismatch(&'static str),

    #[error("{what}: size {n} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("edge `{0} -- {1}` is absent or not symmetric")]
    EdgeAbsent(String, String),

    #[error("an arc between `{0}` and `{1}` is already present")]
    EdgePresent(String, String),

    #[error("operation requires a nonempty node set")]
    EmptySet,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
