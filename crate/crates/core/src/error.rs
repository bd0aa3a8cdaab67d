use thiserror::Error;

use crate::constellation::SatId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed constellation descriptor. `position` is a byte offset into the input.
    #[error("invalid constellation spec at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid constellation parameters: {0}")]
    InvalidParams(String),

    #[error("satellite {sat} is outside a constellation with {planes} planes of {per_plane} satellites")]
    SatOutOfRange { sat: SatId, planes: u32, per_plane: u32 },

    #[error("direction combination is not hop-minimizing for this pair")]
    NotMinimizing,

    #[error("closed-form inter-plane length requires zero phase offset (F = 0), got F = {0}")]
    NonZeroPhaseOffset(u32),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
