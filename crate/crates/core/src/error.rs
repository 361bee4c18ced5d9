use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polygon needs at least {needed} distinct vertices, found {found}")]
    TooFewVertices { needed: usize, found: usize },

    #[error("polygon is not convex (turn at vertex {index})")]
    NotConvex { index: usize },

    #[error("diagonal {index} is degenerate (P_i = P_(i+n))")]
    DegenerateDiagonal { index: usize },

    #[error("edge {index} is not parallel to its partner")]
    NotParallel { index: usize },

    #[error("invalid centered ball: {0}")]
    InvalidBall(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("parameter `{0}` must be positive")]
    NonPositive(&'static str),

    #[error("index {index} out of range (len {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("scene has a non-finite coordinate")]
    NonFinite,

    #[error("scene has nothing to draw")]
    EmptyScene,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("identity check failed: {0}")]
    Identity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line tool: 2 for bad input, 3 for a
    /// mathematical identity that did not hold.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Identity(_) => 3,
            _ => 2,
        }
    }
}
