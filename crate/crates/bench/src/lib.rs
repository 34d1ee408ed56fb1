//! Shared inputs for the benchmarks.

use chainpoly_core::TriangleSpec;

/// Triangles large enough to make enumeration and counting visible.
pub fn triangles() -> Vec<TriangleSpec> {
    [(4, 5), (6, 7), (8, 8)]
        .into_iter()
        .map(|(i, j)| TriangleSpec::new(i, j).expect("positive sides"))
        .collect()
}
