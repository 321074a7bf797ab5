use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Every variant carries a stable machine code (see [`Error::code`]) used in
/// the JSON error envelope of the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("no rational root: {0}")]
    RootMismatch(String),
    #[error("invalid substitution: {0}")]
    BadSubst(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("outside the classification range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Guard(String),
    #[error("not of the expected type: {0}")]
    NotType(String),
    #[error("unrecognized ideal shape: {0}")]
    Shape(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Ambient(_) => "E_AMBIENT",
            Error::NotUnit(_) => "E_NOT_UNIT",
            Error::RootMismatch(_) => "E_ROOT_MISMATCH",
            Error::BadSubst(_) => "E_BAD_SUBST",
            Error::Params(_) => "E_PARAMS",
            Error::OutOfRange(_) => "E_OUT_OF_THEOREM",
            Error::Guard(_) => "E_GUARD",
            Error::NotType(_) => "E_NOT_TYPE",
            Error::Shape(_) => "E_SHAPE",
            Error::Parse { .. } => "E_PARSE",
            Error::Internal(_) => "E_INTERNAL",
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
