use thiserror::Error;

use crate::geometry::LatticePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid triangle: i = {i}, j = {j} (both must be at least 1)")]
    InvalidTriangle { i: i64, j: i64 },

    #[error("invalid pair: i = {i}, n = {n} (need 1 <= i < n)")]
    InvalidPair { i: i64, n: i64 },

    #[error("degenerate segment at {0}")]
    DegenerateSegment(LatticePoint),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("point {0} is not strictly inside the triangle")]
    PointOutsideTriangle(LatticePoint),

    #[error("Pick's formula needs a polygon with positive area")]
    DegeneratePolygon,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("x = {0} is not strictly between 0 and 1")]
    ProbabilityOutOfRange(String),

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("search cap of {cap} nodes exceeded")]
    SearchCapExceeded { cap: u64 },

    #[error("invalid bound: {0}")]
    InvalidBound(String),
}
