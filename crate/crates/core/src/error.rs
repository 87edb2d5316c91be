use thiserror::Error;

/// Errors raised by the geometric and toric routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("polytope is not full-dimensional: dimension {dim} in rank {rank}")]
    Degenerate { dim: isize, rank: usize },
    #[error("origin is not in the interior: violated halfspace {0}")]
    OriginNotInterior(String),
    #[error("lattice tags differ: {0:?} vs {1:?}")]
    LatticeMismatch(crate::polytope::Lattice, crate::polytope::Lattice),
    #[error("face dimension {k} out of range 0..={dim}")]
    FaceDimension { k: usize, dim: usize },
    #[error("halfspace intersection is unbounded along {0}")]
    Unbounded(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cone is not full-dimensional and pointed")]
    DegenerateCone,
    #[error("cone has no height vector")]
    NotGorenstein,
    #[error("cone is not almost reflexive Gorenstein")]
    NotAlmostReflexive,
    #[error("grading functional is not positive on generator {0}")]
    SliceUnbounded(String),
    #[error("index {index} out of range (count {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected a lattice polytope: {0}")]
    NotLattice(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
