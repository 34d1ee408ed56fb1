//! `PolygonRecord`: one element of the chain family with its lattice counts,
//! as written by `enumerate` in JSON or CSV.

use std::io::Write;

use chainpoly_core::enumeration::CompositionC;
use chainpoly_core::{ChainPolygon, LatticePoint, TriangleSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const CSV_HEADER: [&str; 8] = [
    "k",
    "vCount",
    "iP",
    "bP",
    "area2",
    "u",
    "exponentDoubled",
    "vertices",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PolygonRecord {
    pub vertices: Vec<[i64; 2]>,
    pub k: usize,
    pub v_count: usize,
    pub i_p: i64,
    pub b_p: i64,
    pub area2: i64,
    pub u: i64,
    /// Doubled q-exponent `2(1−k) + cross + gcdsum` of the element's term.
    pub exponent_doubled: i64,
}

impl PolygonRecord {
    pub fn from_polygon(p: &ChainPolygon) -> Self {
        let s = p.stats();
        let c = CompositionC::from_polygon(p);
        Self {
            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            k: s.k,
            v_count: s.v_count,
            i_p: s.interior,
            b_p: s.boundary,
            area2: s.area2,
            u: s.u,
            exponent_doubled: 2 * (1 - s.k as i64) + c.cross_sum() + c.gcd_sum(),
        }
    }

    /// Rebuilds the chain; the triangle is read off the last vertex.
    pub fn to_polygon(&self) -> Result<ChainPolygon, chainpoly_core::Error> {
        let last = self.vertices.last().copied().unwrap_or([0, 0]);
        let spec = TriangleSpec::new(last[0], last[1])?;
        ChainPolygon::new(
            spec,
            self.vertices
                .iter()
                .map(|&[x, y]| LatticePoint::new(x, y))
                .collect(),
        )
    }

    /// Recomputes every field from the vertices and reports the first
    /// disagreement.
    pub fn validate(&self) -> Result<(), String> {
        let poly = self.to_polygon().map_err(|e| e.to_string())?;
        let fresh = Self::from_polygon(&poly);
        if &fresh == self {
            Ok(())
        } else {
            Err(format!("stored {self:?} but recomputed {fresh:?}"))
        }
    }

    /// `"x y;x y;…"`.
    pub fn vertices_field(&self) -> String {
        self.vertices
            .iter()
            .map(|[x, y]| format!("{x} {y}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

pub fn write_json<W: Write>(records: &[PolygonRecord], mut out: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_csv<W: Write>(records: &[PolygonRecord], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.k.to_string(),
            r.v_count.to_string(),
            r.i_p.to_string(),
            r.b_p.to_string(),
            r.area2.to_string(),
            r.u.to_string(),
            r.exponent_doubled.to_string(),
            r.vertices_field(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
