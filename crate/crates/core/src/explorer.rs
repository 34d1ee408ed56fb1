//! Signatures `{(u(P), v(P) − 2) : P ∈ C}` and bounded searches for multisets
//! of pairs `(a, b)` with `Σ x^a (1 − x)^b = 1`.
//!
//! This is search tooling only: it reports which small multisets sum to one
//! and which triangles realize them, within explicit bounds.

use std::fmt;

use crate::enumeration::enumerate_polygons;
use crate::error::{Error, Result};
use crate::geometry::TriangleSpec;
use crate::polyalgebra::UnitPoly;

/// Default cap on backtracking nodes for [`search_unit_multisets`].
pub const DEFAULT_NODE_CAP: u64 = 20_000_000;

/// A multiset of `(a, b)` pairs, kept sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Signature {
    pairs: Vec<(u32, u32)>,
}

impl Signature {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable_by(|a, b| b.cmp(a));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Drops repeated pairs.
    pub fn to_set(&self) -> Self {
        let mut pairs = self.pairs.clone();
        pairs.dedup();
        Self { pairs }
    }

    pub fn has_repeats(&self) -> bool {
        self.pairs.windows(2).any(|w| w[0] == w[1])
    }

    pub fn unit_sum(&self) -> UnitPoly {
        self.pairs
            .iter()
            .map(|&(a, b)| UnitPoly::x_pow_times_one_minus_x_pow(a, b))
            .sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (m, (a, b)) in self.pairs.iter().enumerate() {
            if m > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

/// How two signatures are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semantics {
    /// Multiplicities matter.
    #[default]
    Multiset,
    /// Repeated pairs collapse before comparing; searches use each pair at
    /// most once.
    Set,
}

/// The multiset `{(u(P), v(P) − 2)}` over the chain family of `Δ(m, n)`.
pub fn triangle_signature(m: i64, n: i64) -> Result<Signature> {
    let spec = TriangleSpec::new(m, n)?;
    Ok(Signature::new(
        enumerate_polygons(spec)
            .iter()
            .map(|p| (p.u_count() as u32, (p.vertex_count() - 2) as u32))
            .collect(),
    ))
}

pub fn is_unit_multiset(sig: &Signature) -> bool {
    sig.unit_sum().is_one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub semantics: Semantics,
    pub node_cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            semantics: Semantics::Multiset,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

/// Every multiset of pairs with `a <= max_a`, `b <= max_b` and at most
/// `max_size` elements that contains `(0, 1)` and sums to one.
///
/// The value of `x^a (1−x)^b` at `x = 0` is `[a = 0]`, and at `x = 1` it is
/// `[b = 0]`. A solution therefore has exactly one pair with `a = 0`, which
/// must be the required `(0, 1)`, and exactly one pair with `b = 0`. The
/// search only extends along branches compatible with that, which loses no
/// solutions.
pub fn search_unit_multisets(
    max_a: u32,
    max_b: u32,
    max_size: usize,
    options: SearchOptions,
) -> Result<Vec<Signature>> {
    if max_size < 1 {
        return Err(Error::InvalidBound("max size must be at least 1".into()));
    }
    if max_b < 1 {
        // (0,1) itself is out of bounds.
        return Ok(Vec::new());
    }
    let candidates: Vec<(u32, u32)> = (1..=max_a)
        .flat_map(|a| (0..=max_b).map(move |b| (a, b)))
        .collect();

    let mut search = Search {
        candidates: &candidates,
        max_size,
        distinct: options.semantics == Semantics::Set,
        cap: options.node_cap,
        nodes: 0,
        chosen: vec![(0, 1)],
        found: Vec::new(),
    };
    let start = UnitPoly::x_pow_times_one_minus_x_pow(0, 1);
    search.extend(0, &start, false)?;

    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found)
}

struct Search<'a> {
    candidates: &'a [(u32, u32)],
    max_size: usize,
    distinct: bool,
    cap: u64,
    nodes: u64,
    chosen: Vec<(u32, u32)>,
    found: Vec<Signature>,
}

impl Search<'_> {
    fn extend(&mut self, from: usize, sum: &UnitPoly, has_b_zero: bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::SearchCapExceeded { cap: self.cap });
        }
        if sum.is_one() {
            self.found.push(Signature::new(self.chosen.clone()));
        }
        if self.chosen.len() >= self.max_size {
            return Ok(());
        }
        for idx in from..self.candidates.len() {
            let (a, b) = self.candidates[idx];
            if b == 0 && has_b_zero {
                continue;
            }
            let next = sum + &UnitPoly::x_pow_times_one_minus_x_pow(a, b);
            self.chosen.push((a, b));
            let resume = if self.distinct { idx + 1 } else { idx };
            self.extend(resume, &next, has_b_zero || b == 0)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

/// All `(m, n)` with `m <= max_m`, `n <= max_n` whose triangle signature
/// equals `sig` under the given semantics.
pub fn match_signature(
    sig: &Signature,
    max_m: i64,
    max_n: i64,
    semantics: Semantics,
) -> Result<Vec<(i64, i64)>> {
    if max_m < 1 || max_n < 1 {
        return Err(Error::InvalidBound(format!(
            "triangle bounds must be positive, got ({max_m},{max_n})"
        )));
    }
    let target = match semantics {
        Semantics::Multiset => sig.clone(),
        Semantics::Set => sig.to_set(),
    };
    let mut out = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            let s = triangle_signature(m, n)?;
            let s = match semantics {
                Semantics::Multiset => s,
                Semantics::Set => s.to_set(),
            };
            if s == target {
                out.push((m, n));
            }
        }
    }
    Ok(out)
}
