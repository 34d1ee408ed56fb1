//! The random hull process: keep each interior point of `Δ` independently
//! with probability `x`, take the convex hull together with `(0,0)` and
//! `(i,j)`, and record which chain polygon comes out.
//!
//! The probability of a given `P` is exactly `(1−x)^{u(P)} x^{v(P)−2}`, so the
//! empirical frequencies can be compared row by row against exact rationals.
//!
//! Every trial draws from its own ChaCha8 stream, keyed by the seed and
//! selected by the trial index, so a table depends only on
//! `(spec, x, trials, seed)` and not on how trials are split across threads.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::enumeration::enumerate_polygons;
use crate::error::{Error, Result};
use crate::geometry::{hull_of_sorted, ChainPolygon, LatticePoint, TriangleSpec};

pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;

const CHUNK: u64 = 8192;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationConfig {
    pub spec: TriangleSpec,
    pub x: Ratio<u64>,
    pub trials: u64,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn new(spec: TriangleSpec, x: Ratio<u64>, trials: u64, seed: u64) -> Result<Self> {
        if x.numer().is_zero() || x.numer() >= x.denom() {
            return Err(Error::ProbabilityOutOfRange(x.to_string()));
        }
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(Self {
            spec,
            x,
            trials,
            seed,
        })
    }

    pub fn x_exact(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.x.numer()), BigInt::from(*self.x.denom()))
    }
}

/// Trial counts keyed by the resulting chain polygon.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<ChainPolygon, u64>,
}

impl FrequencyTable {
    pub fn count(&self, p: &ChainPolygon) -> u64 {
        self.counts.get(p).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ChainPolygon, u64)> {
        self.counts.iter().map(|(p, c)| (p, *c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    fn merge(&mut self, other: HashMap<ChainPolygon, u64>) {
        for (p, c) in other {
            *self.counts.entry(p).or_insert(0) += c;
        }
    }
}

/// `(1−x)^{u(P)} x^{v(P)−2}`.
pub fn exact_prob(p: &ChainPolygon, x: &BigRational) -> BigRational {
    let keep = x.clone();
    let drop = BigRational::one() - x;
    let mut out = BigRational::one();
    for _ in 0..p.u_count() {
        out *= &drop;
    }
    for _ in 0..p.vertex_count() - 2 {
        out *= &keep;
    }
    out
}

/// The generator for trial `index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let key = ChaCha8Rng::seed_from_u64(seed).get_seed();
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// One round of the process. `interior` must be the sorted interior points of
/// `spec`. Each point costs one uniform draw in `0..den`, kept when it falls
/// below `num`.
pub fn run_trial<R: Rng>(
    spec: TriangleSpec,
    interior: &[LatticePoint],
    x: Ratio<u64>,
    rng: &mut R,
) -> ChainPolygon {
    let (num, den) = (*x.numer(), *x.denom());
    let mut points = Vec::with_capacity(interior.len() + 2);
    points.push(LatticePoint::ORIGIN);
    for p in interior {
        if rng.random_range(0..den) < num {
            points.push(*p);
        }
    }
    points.push(spec.apex());
    hull_of_sorted(&points, spec)
}

pub fn simulate(config: &SimulationConfig) -> FrequencyTable {
    let spec = config.spec;
    let interior = spec.interior_points();
    let key = ChaCha8Rng::seed_from_u64(config.seed).get_seed();
    let chunks = config.trials.div_ceil(CHUNK);

    let partials: Vec<HashMap<ChainPolygon, u64>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut tally = HashMap::new();
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(config.trials);
            let mut rng = ChaCha8Rng::from_seed(key);
            for index in start..end {
                rng.set_stream(index);
                rng.set_word_pos(0);
                let p = run_trial(spec, &interior, config.x, &mut rng);
                *tally.entry(p).or_insert(0) += 1;
            }
            tally
        })
        .collect();

    let mut table = FrequencyTable::default();
    for part in partials {
        table.merge(part);
    }
    table
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub polygon: ChainPolygon,
    pub count: u64,
    pub empirical: f64,
    pub exact: BigRational,
    pub z: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub trials: u64,
    pub threshold: f64,
    /// One row per element of `C`, in enumeration order.
    pub rows: Vec<ComparisonRow>,
    /// `Σ exact_prob(P)` over `C`.
    pub normalization: BigRational,
    /// Outcomes that are not elements of `C`; always empty for a table
    /// produced by [`simulate`].
    pub unexpected: Vec<(ChainPolygon, u64)>,
}

impl ComparisonReport {
    pub fn normalized(&self) -> bool {
        self.normalization.is_one()
    }

    pub fn flagged(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| r.flagged)
    }

    pub fn passed(&self) -> bool {
        self.normalized() && self.unexpected.is_empty() && self.flagged().next().is_none()
    }
}

/// Standard score of an observed frequency against a binomial proportion.
pub fn z_score(count: u64, trials: u64, p: f64) -> f64 {
    let n = trials as f64;
    let empirical = count as f64 / n;
    let sigma = (p * (1.0 - p) / n).sqrt();
    if sigma == 0.0 {
        if empirical == p {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (empirical - p) / sigma
    }
}

pub fn compare(
    table: &FrequencyTable,
    config: &SimulationConfig,
    threshold: f64,
) -> ComparisonReport {
    let x = config.x_exact();
    let family = enumerate_polygons(config.spec);
    let trials = table.total();

    let mut normalization = BigRational::zero();
    let rows: Vec<ComparisonRow> = family
        .iter()
        .map(|p| {
            let exact = exact_prob(p, &x);
            normalization += &exact;
            let count = table.count(p);
            let pf = exact.to_f64().expect("probabilities are finite");
            let z = z_score(count, trials, pf);
            ComparisonRow {
                polygon: p.clone(),
                count,
                empirical: count as f64 / trials as f64,
                exact,
                z,
                flagged: z.abs() > threshold,
            }
        })
        .collect();

    let unexpected = table
        .iter()
        .filter(|(p, _)| !family.contains(p))
        .map(|(p, c)| (p.clone(), c))
        .collect();

    ComparisonReport {
        trials,
        threshold,
        rows,
        normalization,
        unexpected,
    }
}
