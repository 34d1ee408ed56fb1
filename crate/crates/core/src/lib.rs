//! Exhaustive verification of a q-polynomial identity indexed by convex
//! lattice chains.
//!
//! For a right triangle `Δ(i, j)` with vertices `(0,0)`, `(i,0)`, `(i,j)` the
//! crate enumerates every convex lattice chain from `(0,0)` to `(i,j)` that
//! stays strictly inside `Δ`, together with the slope-constrained
//! compositions that index them, and checks the resulting sums as exact
//! polynomials with arbitrary-precision coefficients.
//!
//! Modules, bottom-up:
//!
//! - [`geometry`]: lattice points, the triangle, chain polygons, lattice
//!   counts and the integer convex hull.
//! - [`enumeration`]: the composition sets and the chain family, with the
//!   bijections between them.
//! - [`polyalgebra`]: sparse polynomials in `v = q^(1/2)` and in `x`.
//! - [`verification`]: both sides of every identity form.
//! - [`montecarlo`]: the random point-selection process and its comparison
//!   against exact probabilities.
//! - [`explorer`]: signatures `{(u(P), v(P) - 2)}` and bounded searches for
//!   multisets with `Σ x^a (1-x)^b = 1`.

pub mod enumeration;
pub mod error;
pub mod explorer;
pub mod geometry;
pub mod montecarlo;
pub mod polyalgebra;
pub mod verification;

pub use enumeration::{CompositionC, CompositionD};
pub use error::{Error, Result};
pub use explorer::Signature;
pub use geometry::{ChainPolygon, LatticePoint, LatticePolygon, PolygonStats, TriangleSpec};
pub use montecarlo::{ComparisonReport, FrequencyTable, SimulationConfig};
pub use polyalgebra::{QHalfPoly, UnitPoly};
pub use verification::IdentityReport;
