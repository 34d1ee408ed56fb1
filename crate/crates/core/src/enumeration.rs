//! Slope-constrained compositions and the convex chains they index.
//!
//! `D(i, n)` holds sequences of steps `(a, b)` with `Σa = i`, `Σb = n` and
//! `1 > a₁/b₁ > a₂/b₂ > … > 0`. `C(i, j)` holds sequences `(x, y)` with
//! `Σx = i`, `Σy = j` and strictly increasing `y/x`. The shear
//! `(a, b) ↦ (a, b − a)` identifies the two, and partial sums of a `C`
//! composition are the vertices of a convex chain in `Δ(i, j)`.
//!
//! Enumerations are grouped by `k` (number of steps) and lexicographic in the
//! step sequence within a group.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{gcd, ChainPolygon, LatticePoint, TriangleSpec};

/// An element of `D_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionD {
    steps: Vec<(i64, i64)>,
}

/// An element of `C_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionC {
    steps: Vec<(i64, i64)>,
}

impl CompositionD {
    pub fn new(steps: Vec<(i64, i64)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidComposition("no steps".into()));
        }
        for &(a, b) in &steps {
            if a < 1 || b <= a {
                return Err(Error::InvalidComposition(format!(
                    "step ({a},{b}) violates 0 < a/b < 1"
                )));
            }
        }
        for w in steps.windows(2) {
            let ((a1, b1), (a2, b2)) = (w[0], w[1]);
            if a1 * b2 <= a2 * b1 {
                return Err(Error::InvalidComposition(format!(
                    "slopes {a1}/{b1} and {a2}/{b2} do not strictly decrease"
                )));
            }
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[(i64, i64)] {
        &self.steps
    }

    pub fn k(&self) -> usize {
        self.steps.len()
    }

    /// `(Σa, Σb)`, i.e. `(i, n)`.
    pub fn totals(&self) -> (i64, i64) {
        totals(&self.steps)
    }

    pub fn cross_sum(&self) -> i64 {
        cross_sum(&self.steps)
    }

    pub fn gcd_sum(&self) -> i64 {
        gcd_sum(&self.steps)
    }

    /// `(a, b) ↦ (a, b − a)`.
    pub fn to_c(&self) -> CompositionC {
        CompositionC {
            steps: self.steps.iter().map(|&(a, b)| (a, b - a)).collect(),
        }
    }
}

impl CompositionC {
    pub fn new(steps: Vec<(i64, i64)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidComposition("no steps".into()));
        }
        for &(x, y) in &steps {
            if x < 1 || y < 1 {
                return Err(Error::InvalidComposition(format!(
                    "step ({x},{y}) is not positive"
                )));
            }
        }
        for w in steps.windows(2) {
            let ((x1, y1), (x2, y2)) = (w[0], w[1]);
            if y1 * x2 >= y2 * x1 {
                return Err(Error::InvalidComposition(format!(
                    "slopes {y1}/{x1} and {y2}/{x2} do not strictly increase"
                )));
            }
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[(i64, i64)] {
        &self.steps
    }

    pub fn k(&self) -> usize {
        self.steps.len()
    }

    /// `(Σx, Σy)`, i.e. `(i, j)`.
    pub fn totals(&self) -> (i64, i64) {
        totals(&self.steps)
    }

    pub fn cross_sum(&self) -> i64 {
        cross_sum(&self.steps)
    }

    pub fn gcd_sum(&self) -> i64 {
        gcd_sum(&self.steps)
    }

    /// `(x, y) ↦ (x, x + y)`.
    pub fn to_d(&self) -> CompositionD {
        CompositionD {
            steps: self.steps.iter().map(|&(x, y)| (x, x + y)).collect(),
        }
    }

    /// The chain through the partial sums `(0,0), (x₁,y₁), …, (i,j)`.
    pub fn to_polygon(&self, spec: TriangleSpec) -> Result<ChainPolygon> {
        if self.totals() != (spec.i(), spec.j()) {
            return Err(Error::InvalidComposition(format!(
                "totals {:?} do not match {spec}",
                self.totals()
            )));
        }
        let mut vertices = Vec::with_capacity(self.steps.len() + 1);
        let mut p = LatticePoint::ORIGIN;
        vertices.push(p);
        for &(x, y) in &self.steps {
            p = LatticePoint::new(p.x + x, p.y + y);
            vertices.push(p);
        }
        ChainPolygon::new(spec, vertices)
    }

    /// Consecutive vertex differences.
    pub fn from_polygon(poly: &ChainPolygon) -> Self {
        Self {
            steps: poly.steps().collect(),
        }
    }
}

fn fmt_steps(steps: &[(i64, i64)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("(")?;
    for (m, (a, b)) in steps.iter().enumerate() {
        if m > 0 {
            f.write_str(",")?;
        }
        write!(f, "({a},{b})")?;
    }
    f.write_str(")")
}

impl fmt::Display for CompositionD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_steps(&self.steps, f)
    }
}

impl fmt::Display for CompositionC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_steps(&self.steps, f)
    }
}

fn totals(steps: &[(i64, i64)]) -> (i64, i64) {
    steps
        .iter()
        .fold((0, 0), |(sa, sb), &(a, b)| (sa + a, sb + b))
}

/// `Σ_{l1 < l2} (a_{l1} b_{l2} − a_{l2} b_{l1})`, accumulated in one pass.
pub fn cross_sum(steps: &[(i64, i64)]) -> i64 {
    let (mut pa, mut pb, mut acc) = (0, 0, 0);
    for &(a, b) in steps {
        acc += pa * b - a * pb;
        pa += a;
        pb += b;
    }
    acc
}

pub fn gcd_sum(steps: &[(i64, i64)]) -> i64 {
    steps.iter().map(|&(a, b)| gcd(a, b)).sum()
}

fn group_by_k<T>(mut items: Vec<Vec<(i64, i64)>>, wrap: impl Fn(Vec<(i64, i64)>) -> T) -> Vec<T> {
    // DFS output is already lexicographic; a stable sort keeps that inside groups.
    items.sort_by_key(Vec::len);
    items.into_iter().map(wrap).collect()
}

/// Every element of `⋃_k D_k` for `1 <= i < n`.
pub fn enumerate_d(i: i64, n: i64) -> Result<Vec<CompositionD>> {
    if i < 1 || n <= i {
        return Err(Error::InvalidPair { i, n });
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    dfs_d(i, n, None, &mut path, &mut out);
    Ok(group_by_k(out, |steps| CompositionD { steps }))
}

fn dfs_d(
    rem_a: i64,
    rem_b: i64,
    prev: Option<(i64, i64)>,
    path: &mut Vec<(i64, i64)>,
    out: &mut Vec<Vec<(i64, i64)>>,
) {
    if rem_a == 0 && rem_b == 0 {
        out.push(path.clone());
        return;
    }
    for a in 1..=rem_a {
        for b in (a + 1)..=rem_b {
            if let Some((pa, pb)) = prev {
                // a/b < pa/pb
                if a * pb >= pa * b {
                    continue;
                }
            }
            let (ra, rb) = (rem_a - a, rem_b - b);
            // Whatever remains needs its own steps with b > a >= 1.
            if (ra == 0) != (rb == 0) || (ra > 0 && rb <= ra) {
                continue;
            }
            path.push((a, b));
            dfs_d(ra, rb, Some((a, b)), path, out);
            path.pop();
        }
    }
}

/// Every element of `⋃_k C_k` for `i, j >= 1`.
pub fn enumerate_c(i: i64, j: i64) -> Result<Vec<CompositionC>> {
    if i < 1 || j < 1 {
        return Err(Error::InvalidTriangle { i, j });
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    dfs_c(i, j, None, &mut path, &mut out);
    Ok(group_by_k(out, |steps| CompositionC { steps }))
}

fn dfs_c(
    rem_x: i64,
    rem_y: i64,
    prev: Option<(i64, i64)>,
    path: &mut Vec<(i64, i64)>,
    out: &mut Vec<Vec<(i64, i64)>>,
) {
    if rem_x == 0 && rem_y == 0 {
        out.push(path.clone());
        return;
    }
    for x in 1..=rem_x {
        for y in 1..=rem_y {
            if let Some((px, py)) = prev {
                // y/x > py/px
                if y * px <= py * x {
                    continue;
                }
            }
            let (rx, ry) = (rem_x - x, rem_y - y);
            if (rx == 0) != (ry == 0) {
                continue;
            }
            // Later steps are steeper than this one, so their total is too.
            if rx > 0 && ry * x <= y * rx {
                continue;
            }
            path.push((x, y));
            dfs_c(rx, ry, Some((x, y)), path, out);
            path.pop();
        }
    }
}

/// The family `C` of chain polygons of `Δ`, in the order of [`enumerate_c`].
pub fn enumerate_polygons(spec: TriangleSpec) -> Vec<ChainPolygon> {
    enumerate_c(spec.i(), spec.j())
        .expect("a valid spec has positive sides")
        .iter()
        .map(|c| {
            c.to_polygon(spec)
                .expect("enumerated compositions form valid chains")
        })
        .collect()
}
