use std::fmt;

use thiserror::Error;

/// What went wrong while decoding a graph6 line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    Empty,
    /// Byte outside the printable range 63..=126.
    OutOfRange(u8),
    /// Order prefix is missing, truncated, or uses the long form beyond our range.
    BadLengthPrefix,
    /// Fewer adjacency bytes than the order requires.
    Truncated { expected: usize, found: usize },
    TrailingGarbage,
    NonZeroPadding,
}

impl fmt::Display for Graph6ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6ErrorKind::Empty => write!(f, "empty input"),
            Graph6ErrorKind::OutOfRange(b) => write!(f, "byte 0x{b:02x} outside graph6 range 63..=126"),
            Graph6ErrorKind::BadLengthPrefix => write!(f, "malformed length prefix"),
            Graph6ErrorKind::Truncated { expected, found } => {
                write!(f, "expected {expected} adjacency bytes, found {found}")
            }
            Graph6ErrorKind::TrailingGarbage => write!(f, "trailing garbage after adjacency data"),
            Graph6ErrorKind::NonZeroPadding => write!(f, "non-zero padding bits"),
        }
    }
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("graph6 error at byte {offset}: {kind}")]
    Graph6 { offset: usize, kind: Graph6ErrorKind },

    #[error("order {order} exceeds supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),

    #[error("pair ({0}, {1}) not available for contraction: vertices are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("cannot contract vertex {0} into itself")]
    SameVertex(usize),

    #[error("edge ({0}, {1}) is invalid in a simple graph")]
    InvalidEdge(usize, usize),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edges")]
    Edgeless,

    #[error("{what} budget exceeded: order {order} > limit {limit}")]
    OverBudget { what: &'static str, order: usize, limit: usize },

    #[error("part {index} has {size} element(s); the predicate needs more than one")]
    PartTooSmall { index: usize, size: usize },

    #[error("invalid partite representation: {0}")]
    InvalidRepresentation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
