use thiserror::Error;

use crate::point::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GnsError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::point::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("coordinate {0} does not fit in a point")]
    CoordinateOverflow(u64),

    #[error("the zero vector cannot be a gap")]
    ZeroGap,

    #[error("not a monoid: gap {h} = {a} + {b} with both summands in the complement")]
    NotAMonoid { h: Point, a: Point, b: Point },

    #[error("{0} is not a gap")]
    NotAGap(Point),

    #[error("{0} is not a special gap")]
    NotSpecialGap(Point),

    #[error("{0} is not a minimal generator")]
    NotMinimalGenerator(Point),

    #[error("{0} is not a nonzero element of the semigroup")]
    NotAnElement(Point),

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),

    #[error("semigroup is not the representative of its isomorphism class")]
    NotRepresentative,

    #[error("semigroup is not equivariant")]
    NotEquivariant,

    #[error("order {0} is not O-good; the fixed-genus tree needs lex or order1")]
    NotOGoodOrder(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("corrupt checkpoint: {0}")]
    CheckpointCorrupt(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GnsError {
    fn from(e: std::io::Error) -> Self {
        GnsError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GnsError>;
