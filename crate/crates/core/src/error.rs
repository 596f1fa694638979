use thiserror::Error;

use crate::quiver::DimensionVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver must have at least one vertex")]
    NoVertices,

    #[error(
        "arrow {index} ({source_vertex} -> {target}) refers to a vertex outside 1..={vertex_count}"
    )]
    ArrowOutOfRange {
        index: usize,
        source_vertex: usize,
        target: usize,
        vertex_count: usize,
    },

    #[error("vertex {vertex} is outside 1..={vertex_count}")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("expected a vector of length {expected}, got length {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension vector must be nonzero")]
    ZeroDimensionVector,

    #[error("slope of the zero dimension vector is undefined")]
    UndefinedSlope,

    #[error("stability parameter is not orthogonal to d: theta(d) = {value}")]
    NotOrthogonal { value: i64 },

    #[error("no semistable representation of dimension vector {0}")]
    EmptySemistableLocus(DimensionVector),

    #[error("invalid Harder-Narasimhan type: {0}")]
    InvalidHnType(String),

    #[error("field size {0} is not a supported prime")]
    InvalidField(u32),

    #[error("enumeration of {count} items exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
}
