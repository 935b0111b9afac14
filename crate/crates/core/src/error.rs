use thiserror::Error;

/// Errors raised by the group and homomorphism layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cyclic order {0} is not allowed (orders must be at least 2)")]
    InvalidOrder(i64),
    #[error("integer overflow beyond 64 bits")]
    Overflow,
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error(
        "entry {entry} at ({row}, {col}) does not respect relations: generator of order {source_order} cannot map to coordinate of order {target_order}"
    )]
    IllDefined {
        row: usize,
        col: usize,
        entry: i64,
        source_order: u64,
        target_order: u64,
    },
    #[error("source and target differ; an endomorphism is required")]
    NotEndomorphism,
    #[error("homomorphism is not invertible")]
    NotInvertible,
    #[error("group presentations do not match for composition or addition")]
    IncompatibleGroups,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("block structure is not square")]
    NotSquare,
    #[error("invalid group literal at column {column}: {message}")]
    Literal { column: usize, message: String },
}
