use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("not a degree one map: {0}")]
    NotDegreeOne(String),
    #[error("invalid arc system: {0}")]
    InvalidArcSystem(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),
    #[error("invalid widths: {0}")]
    InvalidWidths(String),
    #[error("not a primitive: {0}")]
    NotAPrimitive(String),
    #[error("not semi-conjugate: {0}")]
    NotSemiconjugate(String),
    #[error("cannot glue: {0}")]
    CannotGlue(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
