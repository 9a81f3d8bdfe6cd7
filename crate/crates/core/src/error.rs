use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("missing product `{0}`")]
    MissingProduct(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),

    #[error("matrix is singular")]
    Singular,

    #[error("operator is not an O-operator for the given algebra and bimodule")]
    NotAnOOperator,

    #[error("operator is not a Rota-Baxter operator (family) of weight 0")]
    NotRotaBaxter,

    #[error("bilinear form is not a Connes cocycle compatible with the product")]
    NotACocycle,

    #[error("table is not an associative semigroup")]
    NotASemigroup,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

impl Error {
    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position: position.into(),
            message: message.into(),
        }
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
