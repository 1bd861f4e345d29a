use thiserror::Error;

/// Errors raised by the traffic calculus.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions are not comparable in the requested order")]
    IncomparablePartitions,
    #[error("ground set of size {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("Weingarten system is singular for n = {n}, N = {dim}")]
    SingularWeingarten { n: usize, dim: usize },
    #[error("unresolved label `{0}`")]
    UnresolvedLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("label `{0}` has no family in the coloring")]
    UnknownColor(String),
    #[error("no traffic functional supplied for family {0}")]
    MissingFamily(usize),
    #[error("moment of word `{0}` is not available")]
    MissingMoment(String),
    #[error("moment table is not tracial: `{0}` and `{1}` differ")]
    NotTracial(String, String),
    #[error("graph is not an oriented cactus")]
    NotOrientedCactus,
    #[error("too many edges: {edges} (limit {limit})")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPartition(_) => "invalid_partition",
            Error::IncomparablePartitions => "incomparable_partitions",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Disconnected => "disconnected_graph",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::SizeMismatch(..) => "size_mismatch",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::SingularWeingarten { .. } => "singular_weingarten",
            Error::UnresolvedLabel(_) => "unresolved_label",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnknownColor(_) => "unknown_color",
            Error::MissingFamily(_) => "missing_family",
            Error::MissingMoment(_) => "missing_moment",
            Error::NotTracial(..) => "not_tracial",
            Error::NotOrientedCactus => "not_oriented_cactus",
            Error::TooManyEdges { .. } => "too_many_edges",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
