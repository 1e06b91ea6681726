use thiserror::Error;

/// Errors raised by the workbench operations.
///
/// Verdict failures (a complex that is not simple, a cochain that is not a
/// cocycle) are reported as data by the individual checks, not through this
/// type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("polytope is not full-dimensional (affine dimension {affine} in ambient {ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },

    #[error("polyhedron is unbounded or empty")]
    Unbounded,

    #[error("cone images overlap in quotient: cones {0} and {1} meet outside a common face")]
    FanOverlap(usize, usize),

    #[error("unit face is not a face of the monoid: {0}")]
    NotAFace(String),

    #[error("origin is not interior after normalization")]
    OriginNotInterior,

    #[error("illegal path: {0}")]
    IllegalPath(String),

    #[error("monodromy does not decompose as a shear: {0}")]
    NoShearDecomposition(String),

    #[error("search space exceeds configured bound ({0} assignments)")]
    SearchOverflow(usize),

    #[error("non-saturated face sublattice: {0}")]
    NonSaturated(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("point lies in the log-singular locus: {0}")]
    InLogSingularLocus(String),

    #[error("all coordinates are zero")]
    AllZero,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
