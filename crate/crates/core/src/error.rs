use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate open arc at {0}")]
    DegenerateArc(String),

    #[error("arc {0} is not shorter than a half turn, its doubling image is not an arc")]
    ArcTooLong(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("symbol {symbol} has no piece in partition {partition}")]
    NoSuchPiece { symbol: char, partition: String },

    #[error("invalid component: {0}")]
    InvalidComponent(String),

    #[error("pool holds periods up to {have}, need at least {need}")]
    PoolTooSmall { need: usize, have: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    Violation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
