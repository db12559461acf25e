use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    Incompatible {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("determinant of non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("image is not contained in the kernel (composite map is nonzero)")]
    NotAComplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("negative cyclic order {0} in presentation")]
    NegativeEntry(String),
    #[error("presentation has {entries} diagonal entries but ambient rank {ambient}")]
    RankTooSmall { entries: usize, ambient: usize },
    #[error("group {0} is infinite")]
    Infinite(String),
    #[error("group of order {0} is too large to enumerate")]
    TooLarge(String),
    #[error("quotient by {0}: modulus must be positive")]
    NonPositiveModulus(i64),
    #[error("cannot parse group expression {text:?}: {reason}")]
    Parse { text: String, reason: String },
}
