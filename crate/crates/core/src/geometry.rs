//! Lattice-geometry kernel.
//!
//! Everything here is exact integer arithmetic. Orientation is decided by the
//! sign of a cross product and slopes are compared by cross-multiplying, so no
//! predicate ever divides.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Twice the signed area of the triangle `o, a, b`; positive when `b` lies to
/// the left of the directed line `o -> a`.
#[inline]
pub fn orient(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

#[inline]
pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Lattice points on the closed segment `p r`, endpoints included.
pub fn segment_lattice_count(p: LatticePoint, r: LatticePoint) -> Result<i64> {
    if p == r {
        return Err(Error::DegenerateSegment(p));
    }
    Ok(gcd(r.x - p.x, r.y - p.y) + 1)
}

fn on_closed_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// The right triangle `Δ` with vertices `(0,0)`, `(i,0)` and `(i,j)`, where
/// `n = i + j`. Its hypotenuse `L` joins `(0,0)` and `(i,j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleSpec {
    i: i64,
    j: i64,
}

impl TriangleSpec {
    pub fn new(i: i64, j: i64) -> Result<Self> {
        if i < 1 || j < 1 {
            return Err(Error::InvalidTriangle { i, j });
        }
        Ok(Self { i, j })
    }

    /// The triangle for the pair `1 <= i < n`, i.e. `j = n - i`.
    pub fn from_pair(i: i64, n: i64) -> Result<Self> {
        if i < 1 || n <= i {
            return Err(Error::InvalidPair { i, n });
        }
        Self::new(i, n - i)
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn n(&self) -> i64 {
        self.i + self.j
    }

    pub fn gcd(&self) -> i64 {
        gcd(self.i, self.j)
    }

    /// The far end `(i,j)` of the hypotenuse.
    pub fn apex(&self) -> LatticePoint {
        LatticePoint::new(self.i, self.j)
    }

    /// Strictly below the hypotenuse, strictly above `y = 0` and strictly left
    /// of `x = i`.
    pub fn contains_strictly(&self, p: LatticePoint) -> bool {
        self.j * p.x - self.i * p.y > 0 && p.y > 0 && p.x < self.i
    }

    /// Every lattice point strictly inside `Δ`, ordered lexicographically by
    /// `(x, y)`.
    pub fn interior_points(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for x in 1..self.i {
            for y in 1..self.j {
                let p = LatticePoint::new(x, y);
                if self.contains_strictly(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// `Δ` itself as a generic lattice polygon, for brute-force counts.
    pub fn as_polygon(&self) -> LatticePolygon {
        LatticePolygon {
            vertices: vec![
                LatticePoint::ORIGIN,
                LatticePoint::new(self.i, 0),
                self.apex(),
            ],
        }
    }

    /// The 2-gon `L`.
    pub fn hypotenuse(&self) -> ChainPolygon {
        ChainPolygon {
            vertices: vec![LatticePoint::ORIGIN, self.apex()],
            spec: *self,
        }
    }
}

impl fmt::Display for TriangleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ({},{})", self.i, self.j)
    }
}

/// A simple lattice polygon with at least three vertices, in either
/// orientation. Used as the independent oracle for chain counts and for
/// Pick's theorem on arbitrary shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |m| (self.vertices[m], self.vertices[(m + 1) % n]))
    }

    pub fn doubled_area(&self) -> i64 {
        self.edges()
            .map(|(a, b)| a.x * b.y - b.x * a.y)
            .sum::<i64>()
            .abs()
    }

    pub fn boundary_count(&self) -> i64 {
        self.edges().map(|(a, b)| gcd(b.x - a.x, b.y - a.y)).sum()
    }

    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        self.edges().any(|(a, b)| on_closed_segment(a, b, p))
    }

    /// Strict interior test by crossing number. Points on the boundary are
    /// reported as outside.
    pub fn contains_strictly(&self, p: LatticePoint) -> bool {
        if self.on_boundary(p) {
            return false;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                // p.x < a.x + (p.y - a.y) (b.x - a.x) / (b.y - a.y), cleared of
                // the denominator with its sign.
                let lhs = (p.x - a.x) * (b.y - a.y);
                let rhs = (p.y - a.y) * (b.x - a.x);
                let crosses = if b.y > a.y { lhs < rhs } else { lhs > rhs };
                if crosses {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Brute-force count over the bounding box.
    pub fn interior_count(&self) -> i64 {
        let (lo, hi) = bounding_box(&self.vertices);
        let mut count = 0;
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                if self.contains_strictly(LatticePoint::new(x, y)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// `2·area = 2·i + b − 2`. Rejects zero-area input.
    pub fn pick_check(&self) -> Result<bool> {
        let area2 = self.doubled_area();
        if area2 == 0 {
            return Err(Error::DegeneratePolygon);
        }
        Ok(area2 == 2 * self.interior_count() + self.boundary_count() - 2)
    }
}

fn bounding_box(points: &[LatticePoint]) -> (LatticePoint, LatticePoint) {
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Lattice counts for one chain polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolygonStats {
    /// Number of chain edges, i.e. the `k` of the indexing composition.
    pub k: usize,
    pub v_count: usize,
    pub interior: i64,
    pub boundary: i64,
    pub area2: i64,
    /// Interior points of `Δ` outside the closed polygon.
    pub u: i64,
}

/// A convex polygon inside `Δ` with the hypotenuse `L` as an edge, stored as
/// its chain of vertices from `(0,0)` to `(i,j)`. The closing edge back to the
/// origin is implicit. Two vertices means the polygon is `L` itself.
///
/// Invariants, checked by [`ChainPolygon::new`]:
/// - the chain starts at `(0,0)` and ends at `(i,j)`;
/// - every edge `(dx, dy)` has `dx >= 1` and `dy >= 1`;
/// - edge slopes strictly increase;
/// - intermediate vertices lie strictly inside `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainPolygon {
    vertices: Vec<LatticePoint>,
    spec: TriangleSpec,
}

impl ChainPolygon {
    pub fn new(spec: TriangleSpec, vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidChain("fewer than two vertices".into()));
        }
        if vertices[0] != LatticePoint::ORIGIN {
            return Err(Error::InvalidChain(format!(
                "chain starts at {} instead of (0,0)",
                vertices[0]
            )));
        }
        let last = vertices[vertices.len() - 1];
        if last != spec.apex() {
            return Err(Error::InvalidChain(format!(
                "chain ends at {last} instead of {}",
                spec.apex()
            )));
        }
        for w in vertices.windows(2) {
            let (dx, dy) = (w[1].x - w[0].x, w[1].y - w[0].y);
            if dx < 1 || dy < 1 {
                return Err(Error::InvalidChain(format!(
                    "edge {} -> {} is not strictly increasing in both coordinates",
                    w[0], w[1]
                )));
            }
        }
        for w in vertices.windows(3) {
            if orient(w[0], w[1], w[2]) <= 0 {
                return Err(Error::InvalidChain(format!(
                    "slopes do not strictly increase at {}",
                    w[1]
                )));
            }
        }
        if let Some(p) = vertices[1..vertices.len() - 1]
            .iter()
            .find(|p| !spec.contains_strictly(**p))
        {
            return Err(Error::PointOutsideTriangle(*p));
        }
        Ok(Self { vertices, spec })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn spec(&self) -> TriangleSpec {
        self.spec
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Chain edges, i.e. `k`.
    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `v(P)`: `k + 1`, which is 2 for `L`.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edge vectors of the chain, excluding the closing hypotenuse.
    pub fn steps(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| (w[1].x - w[0].x, w[1].y - w[0].y))
    }

    /// Edges of the closed, counterclockwise cycle, including the hypotenuse.
    fn boundary_edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |m| (self.vertices[m], self.vertices[(m + 1) % n]))
    }

    /// Shoelace sum over the closed cycle.
    pub fn doubled_area(&self) -> i64 {
        self.boundary_edges()
            .map(|(a, b)| a.x * b.y - b.x * a.y)
            .sum()
    }

    /// `b(P)`. The segment `L` counts each of its `gcd(i,j) + 1` points once.
    pub fn boundary_count(&self) -> i64 {
        if self.is_segment() {
            return self.spec.gcd() + 1;
        }
        self.boundary_edges()
            .map(|(a, b)| gcd(b.x - a.x, b.y - a.y))
            .sum()
    }

    /// Closed-region membership, boundary included.
    pub fn contains_closed(&self, p: LatticePoint) -> bool {
        if self.is_segment() {
            return on_closed_segment(LatticePoint::ORIGIN, self.spec.apex(), p);
        }
        self.boundary_edges().all(|(a, b)| orient(a, b, p) >= 0)
    }

    pub fn contains_strictly(&self, p: LatticePoint) -> bool {
        !self.is_segment() && self.boundary_edges().all(|(a, b)| orient(a, b, p) > 0)
    }

    /// `i(P)` by testing every point of the bounding box.
    pub fn interior_count(&self) -> i64 {
        if self.is_segment() {
            return 0;
        }
        let (lo, hi) = bounding_box(&self.vertices);
        let mut count = 0;
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                if self.contains_strictly(LatticePoint::new(x, y)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// `u(P)`: interior points of `Δ` not in the closed region of `P`.
    pub fn u_count(&self) -> i64 {
        self.spec
            .interior_points()
            .into_iter()
            .filter(|p| !self.contains_closed(*p))
            .count() as i64
    }

    pub fn pick_check(&self) -> Result<bool> {
        let area2 = self.doubled_area();
        if area2 == 0 {
            return Err(Error::DegeneratePolygon);
        }
        Ok(area2 == 2 * self.interior_count() + self.boundary_count() - 2)
    }

    pub fn stats(&self) -> PolygonStats {
        PolygonStats {
            k: self.edge_count(),
            v_count: self.vertex_count(),
            interior: self.interior_count(),
            boundary: self.boundary_count(),
            area2: self.doubled_area(),
            u: self.u_count(),
        }
    }
}

impl fmt::Display for ChainPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, p) in self.vertices.iter().enumerate() {
            if m > 0 {
                f.write_str("-")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Convex hull of `{(0,0), (i,j)} ∪ chosen`, returned as its chain.
///
/// Since every chosen point lies strictly below the hypotenuse, the hull is
/// bounded by `L` and the lower monotone chain, which is built here with
/// Andrew's scan. Collinear points are dropped from the vertex list.
pub fn convex_hull_chain<'a, I>(chosen: I, spec: TriangleSpec) -> Result<ChainPolygon>
where
    I: IntoIterator<Item = &'a LatticePoint>,
{
    let mut points = vec![LatticePoint::ORIGIN, spec.apex()];
    for p in chosen {
        if !spec.contains_strictly(*p) {
            return Err(Error::PointOutsideTriangle(*p));
        }
        points.push(*p);
    }
    points.sort_unstable();
    points.dedup();
    Ok(ChainPolygon {
        vertices: lower_hull(&points),
        spec,
    })
}

/// Hull of points already sorted by `(x, y)` and validated against `spec`.
pub(crate) fn hull_of_sorted(points: &[LatticePoint], spec: TriangleSpec) -> ChainPolygon {
    ChainPolygon {
        vertices: lower_hull(points),
        spec,
    }
}

fn lower_hull(sorted: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut stack: Vec<LatticePoint> = Vec::with_capacity(sorted.len());
    for &p in sorted {
        while stack.len() >= 2 && orient(stack[stack.len() - 2], stack[stack.len() - 1], p) <= 0 {
            stack.pop();
        }
        stack.push(p);
    }
    stack
}
