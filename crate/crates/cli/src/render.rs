//! Static SVG figures: the triangle, its hypotenuse, the interior lattice
//! points and one filled chain polygon.

use std::fmt::Write;

use chainpoly_core::ChainPolygon;

/// User units per lattice unit.
pub const SCALE: i64 = 32;
const MARGIN: i64 = 32;
const CAPTION: i64 = 24;

pub fn file_name(index: usize) -> String {
    format!("poly_{index}.svg")
}

pub fn render_svg(poly: &ChainPolygon) -> String {
    let spec = poly.spec();
    let (i, j) = (spec.i(), spec.j());
    let width = i * SCALE + 2 * MARGIN;
    let height = j * SCALE + 2 * MARGIN + CAPTION;
    let px = |x: i64| MARGIN + x * SCALE;
    let py = |y: i64| MARGIN + (j - y) * SCALE;
    let stats = poly.stats();

    let mut s = String::new();
    // Writing into a String cannot fail.
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"  <rect width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"  <polygon points="{},{} {},{} {},{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        px(0),
        py(0),
        px(i),
        py(0),
        px(i),
        py(j)
    );
    if !poly.is_segment() {
        let points = poly
            .vertices()
            .iter()
            .map(|v| format!("{},{}", px(v.x), py(v.y)))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            s,
            r##"  <polygon points="{points}" fill="#9ecae1" fill-opacity="0.7" stroke="#08519c" stroke-width="2"/>"##
        );
    }
    let _ = writeln!(
        s,
        r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#cb181d" stroke-width="4" stroke-linecap="round"/>"##,
        px(0),
        py(0),
        px(i),
        py(j)
    );
    for p in spec.interior_points() {
        let fill = if poly.contains_closed(p) {
            "#08306b"
        } else {
            "#969696"
        };
        let _ = writeln!(
            s,
            r#"  <circle cx="{}" cy="{}" r="3" fill="{fill}"/>"#,
            px(p.x),
            py(p.y)
        );
    }
    for v in poly.vertices() {
        let _ = writeln!(
            s,
            r##"  <circle cx="{}" cy="{}" r="5" fill="none" stroke="#08519c" stroke-width="2"/>"##,
            px(v.x),
            py(v.y)
        );
    }
    let _ = writeln!(
        s,
        r#"  <text x="{}" y="{}" font-family="monospace" font-size="12">{spec} k={} i={} b={} u={}</text>"#,
        MARGIN / 2,
        height - CAPTION / 2,
        stats.k,
        stats.interior,
        stats.boundary,
        stats.u
    );
    s.push_str("</svg>\n");
    s
}
