//! Both sides of the identity, in every equivalent form, compared as exact
//! polynomials.
//!
//! For `1 <= i < n` and `j = n − i`:
//!
//! 1. composition form: `Σ_{D} (q−1)^{k−1} q^{1−k+(cross+gcdsum)/2} = q^{(ij−n)/2+1}`;
//! 2. polygon form: `Σ_{P∈C} (q−1)^{k−1} q^{−(k−1)+i(P)+b(P)} = q^{(ij−n+g)/2+2}`
//!    with `g = gcd(i, j)`;
//! 3. unit form: `Σ_{P∈C} x^{u(P)} (1−x)^{v(P)−2} = 1`;
//! 4. process form: `Σ_{P∈C} (1−x)^{u(P)} x^{v(P)−2} = 1`;
//! 5. the polygon-form sum equals the composition-form sum times `q^{1+g/2}`.
//!
//! All q-exponents are carried doubled so they stay integral.

use std::fmt;

use rayon::prelude::*;

use crate::enumeration::{enumerate_d, CompositionD};
use crate::error::Result;
use crate::geometry::{ChainPolygon, PolygonStats, TriangleSpec};
use crate::polyalgebra::{QHalfPoly, UnitPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    CompositionForm,
    PolygonForm,
    UnitForm,
    ProcessForm,
    FormConsistency,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::CompositionForm => "composition form",
            CheckKind::PolygonForm => "polygon form",
            CheckKind::UnitForm => "unit form",
            CheckKind::ProcessForm => "process form",
            CheckKind::FormConsistency => "form consistency",
        })
    }
}

/// One compared pair of polynomials, rendered canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub kind: CheckKind,
    pub passed: bool,
    pub left: String,
    pub right: String,
}

/// The contribution of one index element to the sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub composition: CompositionD,
    pub polygon: ChainPolygon,
    pub stats: PolygonStats,
    pub k: usize,
    /// Doubled q-exponent of the composition-form term.
    pub exponent_doubled: i64,
    /// Doubled q-exponent of the polygon-form term.
    pub polygon_exponent_doubled: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub spec: TriangleSpec,
    /// Composition-form sum.
    pub lhs: QHalfPoly,
    /// `q^{(ij−n)/2+1}`.
    pub rhs: QHalfPoly,
    /// `lhs == rhs`.
    pub equal: bool,
    pub checks: Vec<CheckOutcome>,
    pub ledger: Vec<LedgerEntry>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// `2(1−k) + cross + gcdsum`.
pub fn composition_exponent_doubled(d: &CompositionD) -> i64 {
    2 * (1 - d.k() as i64) + d.cross_sum() + d.gcd_sum()
}

/// `2(−(k−1) + i(P) + b(P))`.
pub fn polygon_exponent_doubled(stats: &PolygonStats) -> i64 {
    2 * (stats.interior + stats.boundary - (stats.k as i64 - 1))
}

fn q_term(k: usize, exponent_doubled: i64) -> QHalfPoly {
    &QHalfPoly::q_minus_one().pow(k as u32 - 1) * &QHalfPoly::q_monomial(exponent_doubled)
}

fn par_sum<T, P, F>(items: &[T], f: F) -> P
where
    T: Sync,
    P: Send + std::iter::Sum<P>,
    F: Fn(&T) -> P + Sync + Send,
{
    let parts: Vec<P> = items.par_iter().map(f).collect();
    parts.into_iter().sum()
}

/// The left side summed over `D(i, n)`.
pub fn lhs_main_via_d(i: i64, n: i64) -> Result<QHalfPoly> {
    let ds = enumerate_d(i, n)?;
    Ok(par_sum(&ds, |d| {
        q_term(d.k(), composition_exponent_doubled(d))
    }))
}

/// `q^{(i(n−i) − n)/2 + 1}`.
pub fn rhs_main(i: i64, n: i64) -> Result<QHalfPoly> {
    let spec = TriangleSpec::from_pair(i, n)?;
    Ok(QHalfPoly::q_monomial(spec.i() * spec.j() - spec.n() + 2))
}

fn polygon_stats(spec: TriangleSpec) -> Vec<(ChainPolygon, PolygonStats)> {
    crate::enumeration::enumerate_polygons(spec)
        .into_par_iter()
        .map(|p| {
            let s = p.stats();
            (p, s)
        })
        .collect()
}

/// `Σ_{P∈C} (q−1)^{k−1} q^{−(k−1)+i(P)+b(P)}`.
pub fn lhs_main_via_polygons(spec: TriangleSpec) -> QHalfPoly {
    let stats = polygon_stats(spec);
    par_sum(&stats, |(_, s)| q_term(s.k, polygon_exponent_doubled(s)))
}

/// `q^{(ij − n + gcd(i,j))/2 + 2}`.
pub fn rhs_polygon_form(spec: TriangleSpec) -> QHalfPoly {
    QHalfPoly::q_monomial(spec.i() * spec.j() - spec.n() + spec.gcd() + 4)
}

fn unit_term(s: &PolygonStats) -> UnitPoly {
    UnitPoly::x_pow_times_one_minus_x_pow(s.u as u32, (s.v_count - 2) as u32)
}

fn process_term(s: &PolygonStats) -> UnitPoly {
    UnitPoly::x_pow_times_one_minus_x_pow((s.v_count - 2) as u32, s.u as u32)
}

/// `Σ_{P∈C} x^{u(P)} (1−x)^{v(P)−2}`.
pub fn mainlem_sum(spec: TriangleSpec) -> UnitPoly {
    let stats = polygon_stats(spec);
    par_sum(&stats, |(_, s)| unit_term(s))
}

/// `Σ_{P∈C} (1−x)^{u(P)} x^{v(P)−2}`.
pub fn mainlem_process_sum(spec: TriangleSpec) -> UnitPoly {
    let stats = polygon_stats(spec);
    par_sum(&stats, |(_, s)| process_term(s))
}

fn outcome<P: fmt::Display + PartialEq>(kind: CheckKind, left: &P, right: &P) -> CheckOutcome {
    CheckOutcome {
        kind,
        passed: left == right,
        left: left.to_string(),
        right: right.to_string(),
    }
}

/// Runs all five checks for `1 <= i < n`.
pub fn verify_all(i: i64, n: i64) -> Result<IdentityReport> {
    let spec = TriangleSpec::from_pair(i, n)?;
    let ds = enumerate_d(i, n)?;

    let ledger: Vec<LedgerEntry> = ds
        .into_par_iter()
        .map(|d| {
            let polygon = d
                .to_c()
                .to_polygon(spec)
                .expect("sheared compositions form valid chains");
            let stats = polygon.stats();
            LedgerEntry {
                k: d.k(),
                exponent_doubled: composition_exponent_doubled(&d),
                polygon_exponent_doubled: polygon_exponent_doubled(&stats),
                composition: d,
                polygon,
                stats,
            }
        })
        .collect();

    let lhs = par_sum(&ledger, |e| q_term(e.k, e.exponent_doubled));
    let rhs = rhs_main(i, n)?;
    let lhs_polygons = par_sum(&ledger, |e| q_term(e.k, e.polygon_exponent_doubled));
    let rhs_polygons = rhs_polygon_form(spec);
    let unit = par_sum(&ledger, |e| unit_term(&e.stats));
    let process = par_sum(&ledger, |e| process_term(&e.stats));
    let scaled = &lhs * &QHalfPoly::q_monomial(2 + spec.gcd());

    let checks = vec![
        outcome(CheckKind::CompositionForm, &lhs, &rhs),
        outcome(CheckKind::PolygonForm, &lhs_polygons, &rhs_polygons),
        outcome(CheckKind::UnitForm, &unit, &UnitPoly::one()),
        outcome(CheckKind::ProcessForm, &process, &UnitPoly::one()),
        outcome(CheckKind::FormConsistency, &lhs_polygons, &scaled),
    ];

    Ok(IdentityReport {
        spec,
        equal: lhs == rhs,
        lhs,
        rhs,
        checks,
        ledger,
    })
}
