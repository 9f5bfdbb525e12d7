use std::collections::BTreeSet;
use std::fmt::Write;

use clarforce::planegraph::Color;
use clarforce::{BondClass, ClarCover, Lattice, PlaneBipartiteGraph, VertexId};

const MARGIN: i64 = 20;
const SQUARE_SCALE: (i64, i64) = (40, 40);
/// Doubled hex coordinates put neighbouring columns 1 apart and rows 1 apart
/// per half side; these factors make the hexagons close to regular.
const HEX_SCALE: (i64, i64) = (35, 20);

fn scale(lattice: Lattice) -> (i64, i64) {
    match lattice {
        Lattice::Square => SQUARE_SCALE,
        Lattice::Hexagonal => HEX_SCALE,
    }
}

/// Draws the graph with the cover faces shaded, cover edges bold and fixed
/// bonds dashed. Output depends only on the inputs.
pub fn render(g: &PlaneBipartiteGraph, cover: &ClarCover, bond_class: &[BondClass]) -> String {
    let (sx, sy) = scale(g.lattice());
    let xs = g.vertices().iter().map(|v| v.pos.0);
    let ys = g.vertices().iter().map(|v| v.pos.1);
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let point = |v: VertexId| {
        let (x, y) = g.vertex(v).pos;
        (MARGIN + (x - x0) * sx, MARGIN + (y - y0) * sy)
    };
    let width = 2 * MARGIN + (x1 - x0) * sx;
    let height = 2 * MARGIN + (y1 - y0) * sy;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );

    let shaded: BTreeSet<_> = cover.faces.iter().copied().collect();
    for f in g.face_ids() {
        let points: Vec<String> = g
            .face(f)
            .boundary
            .iter()
            .map(|&v| {
                let (x, y) = point(v);
                format!("{x},{y}")
            })
            .collect();
        let fill = if shaded.contains(&f) {
            "#f2b134"
        } else {
            "none"
        };
        let _ = writeln!(
            out,
            r#"<polygon class="face" data-face="{f}" points="{}" fill="{fill}"/>"#,
            points.join(" ")
        );
    }

    let bold: BTreeSet<_> = cover.edges.iter().copied().collect();
    for e in g.edge_ids() {
        let [a, b] = g.endpoints(e);
        let ((xa, ya), (xb, yb)) = (point(a), point(b));
        let stroke_width = if bold.contains(&e) { 6 } else { 2 };
        let dash = if bond_class.get(e.0).is_some_and(|c| c.is_fixed()) {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"<line class="edge" data-edge="{e}" x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" stroke="black" stroke-width="{stroke_width}"{dash}/>"#
        );
    }

    for v in g.vertex_ids() {
        let (x, y) = point(v);
        let fill = match g.color(v) {
            Color::Red => "black",
            Color::Blue => "white",
        };
        let _ = writeln!(
            out,
            r#"<circle class="vertex" data-vertex="{v}" cx="{x}" cy="{y}" r="3" fill="{fill}" stroke="black"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}
