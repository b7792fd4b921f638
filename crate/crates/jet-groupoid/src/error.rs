//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by partition, Lie-algebra, germ and jet operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A block index `s` outside the valid range for the partition.
    #[error("block index {index} out of range (valid {min}..={max})")]
    BlockIndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },

    /// Input does not satisfy the invariants of a partition family.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix or tensor dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Incompatible tensor/germ shapes (order, base dimension or truncation).
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A matrix that must be inverted is singular.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// Group or subalgebra membership residual above tolerance.
    #[error("membership violation: {0}")]
    Membership(String),

    /// An operation needs more Taylor coefficients than the germ carries.
    #[error("truncation exhausted: {0}")]
    Truncation(String),

    /// Configuration outside the supported range.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed or schema-violating serialized input.
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
