use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("no collision: particle velocity {particle} does not exceed reflector velocity {reflector}")]
    NoCollision { particle: f64, reflector: f64 },

    #[error("grid: {0}")]
    Grid(String),

    #[error("aliasing: {0}")]
    Aliasing(String),

    #[error("missing section [{0}]")]
    MissingSection(String),

    #[error("scenario: {0}")]
    Scenario(String),

    #[error("format: {0}")]
    Format(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    /// Errors caused by the caller's input rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::MissingSection(_) | Error::Scenario(_) | Error::InvalidParameter { .. }
        )
    }
}
