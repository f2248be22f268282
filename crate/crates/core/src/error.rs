use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown world `{0}`")]
    UnknownWorld(String),

    #[error("metavariable `{0}` in a formula that must be ground")]
    Metavariable(String),

    #[error("schemes cannot be desugared")]
    SchemeDesugar,

    #[error("substitution has no image for metavariable `{0}`")]
    MissingSubstitution(String),

    #[error("{what}: requires {required}, limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("malformed file: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
