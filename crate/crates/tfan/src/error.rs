use thiserror::Error;

/// Errors raised by the exact-geometry kernel (lattice algebra, cones,
/// polyhedra).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("zero has no primitive representative")]
    ZeroVector,
    #[error("expected vectors of rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("input vectors must be primitive and nonzero")]
    NotPrimitive,
    #[error("a polyhedron needs at least one point")]
    NoPoints,
    #[error("polyhedron contains a line; no vertex description exists")]
    ContainsLine,
    #[error("regularity undefined for non-pointed cone")]
    NonPointedCone,
}
