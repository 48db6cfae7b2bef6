use thiserror::Error;

/// Errors produced by the exact combinatorial layer and the numeric layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("component too long, image not an arc (length {0})")]
    ComponentTooLong(String),

    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),

    #[error("degenerate pair: {0}")]
    DegeneratePair(String),

    #[error("pair is not a valid renormalization pair: {0}")]
    InvalidPair(String),

    #[error("inconsistent pair: {0}")]
    InconsistentPair(String),

    #[error("incompatible address: {0}")]
    IncompatibleAddress(String),

    #[error("angle outside the shadow: {0}")]
    NotInShadow(String),

    #[error("no unlinked placement for preimages of chord {0}")]
    PreimageInconsistent(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
