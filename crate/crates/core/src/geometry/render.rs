//! Pictures of Newton polyhedra: SVG staircases in the plane, JSON meshes
//! in space.

use std::fmt::Write;

use serde_json::{json, Value};

use super::{EdgeDescriptor, Polyhedron};
use crate::error::{Error, Result};
use crate::series::json::SCHEMA;
use crate::series::Exponent;

const CELL: i64 = 40;
const MARGIN: i64 = 30;

fn ratio(v: i64) -> String {
    format!("{v}/1")
}

/// SVG of a plane Newton polygon: shaded region, support dots, compact
/// edges drawn in class `compact`, loose ones additionally in class `loose`.
pub fn svg(p: &Polyhedron, edges: &[EdgeDescriptor]) -> Result<String> {
    if p.n() != 2 {
        return Err(Error::Precondition(format!("SVG rendering needs 2 variables, got {}", p.n())));
    }
    let max = p.support().iter().flat_map(|e| e.0.iter().copied()).max().unwrap_or(0) + 2;
    let size = max * CELL + 2 * MARGIN;
    let px = |e: &[i64]| (MARGIN + e[0] * CELL, size - MARGIN - e[1] * CELL);

    let mut verts: Vec<&Exponent> = p.vertices().iter().collect();
    verts.sort_by_key(|v| v.0[0]);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#).unwrap();
    writeln!(out, "  <style>.compact{{stroke:#1f4e9e;stroke-width:3}}.loose{{stroke:#c0392b;stroke-width:5;stroke-dasharray:8 4}}.axis{{stroke:#444;stroke-width:1}}</style>").unwrap();
    let (ox, oy) = px(&[0, 0]);
    writeln!(out, r#"  <line class="axis" x1="{ox}" y1="{oy}" x2="{}" y2="{oy}"/>"#, size - MARGIN / 2).unwrap();
    writeln!(out, r#"  <line class="axis" x1="{ox}" y1="{oy}" x2="{ox}" y2="{}"/>"#, MARGIN / 2).unwrap();

    // Region: up from the leftmost vertex, along the staircase, out to the right.
    let mut pts = Vec::new();
    let first = verts[0];
    let last = verts[verts.len() - 1];
    pts.push((px(&first.0).0, MARGIN / 2));
    pts.extend(verts.iter().map(|v| px(&v.0)));
    pts.push((size - MARGIN / 2, px(&last.0).1));
    pts.push((size - MARGIN / 2, MARGIN / 2));
    let poly: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
    writeln!(out, r##"  <polygon points="{}" fill="#dfe8f5" stroke="none"/>"##, poly.join(" ")).unwrap();

    for e in edges {
        let (x1, y1) = px(&e.a.0);
        let (x2, y2) = px(&e.b.0);
        let class = if e.loose { "compact loose" } else { "compact" };
        writeln!(out, r#"  <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
    }
    for s in p.support() {
        let (x, y) = px(&s.0);
        let (r, fill) = if p.vertices().contains(s) { (6, "#000") } else { (4, "#888") };
        writeln!(out, r#"  <circle cx="{x}" cy="{y}" r="{r}" fill="{fill}"><title>{s}</title></circle>"#).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// JSON description with exact coordinates as `"p/q"` strings.
pub fn mesh(p: &Polyhedron, edges: &[EdgeDescriptor]) -> Value {
    let coords = |e: &Exponent| e.0.iter().map(|&c| ratio(c)).collect::<Vec<_>>();
    let rays: Vec<Vec<String>> =
        (0..p.n()).map(|i| Exponent::unit(p.n(), i)).map(|e| coords(&e)).collect();
    json!({
        "schema": SCHEMA,
        "dimension": p.n(),
        "vertices": p.vertices().iter().map(coords).collect::<Vec<_>>(),
        "support": p.support().iter().map(coords).collect::<Vec<_>>(),
        "compact_edges": edges.iter().map(|e| json!({
            "a": coords(&e.a),
            "b": coords(&e.b),
            "loose": e.loose,
            "descendant": e.descendant,
        })).collect::<Vec<_>>(),
        "rays": rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_svg() {
        let pts = [[0, 4], [1, 2], [2, 1], [4, 0]].iter().map(|p| Exponent(p.to_vec())).collect();
        let p = Polyhedron::from_support(2, pts).unwrap();
        let edges = p.compact_edges();
        let s = svg(&p, &edges).unwrap();
        assert_eq!(s.matches("class=\"compact loose\"").count(), 3);
        assert!(s.starts_with("<svg"));
        let m = mesh(&p, &edges);
        assert_eq!(m["compact_edges"].as_array().unwrap().len(), 3);
        assert_eq!(m["vertices"][0][0], "2/1");
    }
}
