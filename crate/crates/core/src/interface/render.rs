//! Deterministic renderings: an explicit node/piece listing, SVG charts for
//! curves and OBJ meshes for surfaces.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::patchwork::{Edge, Model, PatchworkComplex};

/// The hypersurface as explicit geometry in the cross-polytope model. Node
/// coordinates are doubled so that they stay integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexView {
    pub dim: usize,
    pub degree: i64,
    pub model: Model,
    pub scale: i64,
    pub nodes: Vec<Vec<i64>>,
    pub pieces: Vec<PieceView>,
    /// Pairs of antipodal boundary nodes, identified in the projective model.
    pub identifications: Vec<[usize; 2]>,
    pub non_primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceView {
    pub cell: usize,
    pub orthant: u8,
    pub nodes: Vec<usize>,
}

pub fn complex_view(p: &PatchworkComplex) -> ComplexView {
    let g = p.geometry();
    let mut index: BTreeMap<Edge, usize> = BTreeMap::new();
    for (_, piece) in p.pieces() {
        for &e in piece {
            index.entry(e).or_insert(0);
        }
    }
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    let nodes = index.keys().map(|&e| g.doubled_midpoint(e)).collect();
    let pieces = p
        .pieces()
        .map(|(cell, piece)| PieceView { cell, orthant: g.cells()[cell].orthant, nodes: piece.iter().map(|e| index[e]).collect() })
        .collect();
    let identifications = index
        .iter()
        .filter_map(|(&e, &i)| {
            let a = g.antipodal_edge(e)?;
            let j = *index.get(&a)?;
            (i < j).then_some([i, j])
        })
        .collect();
    ComplexView {
        dim: g.dim(),
        degree: g.degree(),
        model: p.model(),
        scale: 2,
        nodes,
        pieces,
        identifications,
        non_primitive: g.non_primitive(),
    }
}

const SIZE: f64 = 512.0;
const MARGIN: f64 = 24.0;

/// SVG chart of a curve on the square `[-d, d]^2`: the reflected
/// triangulation, vertices filled for `+` and hollow for `-`, pieces as
/// polylines, and numbered ticks on antipodal boundary nodes.
pub fn svg(p: &PatchworkComplex) -> Option<String> {
    if p.dim() != 2 {
        return None;
    }
    let g = p.geometry();
    let d = g.degree() as f64;
    let k = (SIZE - 2.0 * MARGIN) / (2.0 * d);
    // doubled coordinates to pixels
    let px = |x: i64| MARGIN + (x as f64 / 2.0 + d) * k;
    let py = |y: i64| MARGIN + (d - y as f64 / 2.0) * k;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(s, r##"<g stroke="#c8c8c8" stroke-width="1" fill="none">"##);
    for &(a, b) in g.edges() {
        let (pa, pb) = (g.point(a).coords(), g.point(b).coords());
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            px(2 * pa[0]),
            py(2 * pa[1]),
            px(2 * pb[0]),
            py(2 * pb[1])
        );
    }
    let _ = writeln!(s, "</g>");
    let view = complex_view(p);
    let _ = writeln!(s, r##"<g stroke="#c0392b" stroke-width="3" fill="none" stroke-linecap="round">"##);
    for piece in &view.pieces {
        let pts: Vec<String> = piece.nodes.iter().map(|&n| format!("{:.3},{:.3}", px(view.nodes[n][0]), py(view.nodes[n][1]))).collect();
        let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#2c3e50" stroke-width="1.5">"##);
    for (i, pt) in g.points().iter().enumerate() {
        let c = pt.coords();
        let fill = if p.signed().sign(i as u32) > 0 { "#2c3e50" } else { "#ffffff" };
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{fill}"/>"#, px(2 * c[0]), py(2 * c[1]));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#2471a3" stroke-width="2" font-family="monospace" font-size="11" fill="#2471a3">"##);
    for (label, pair) in view.identifications.iter().enumerate() {
        for &n in pair {
            let (x, y) = (view.nodes[n][0], view.nodes[n][1]);
            // outward normal of the boundary edge is (sign x, sign y)
            let (nx, ny) = (x.signum() as f64, -(y.signum() as f64));
            let (cx, cy) = (px(x), py(y));
            let _ = writeln!(
                s,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/><text x="{:.3}" y="{:.3}" stroke="none">{label}</text>"#,
                cx,
                cy,
                cx + 7.0 * nx,
                cy + 7.0 * ny,
                cx + 10.0 * nx - 3.0,
                cy + 10.0 * ny + 4.0
            );
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Some(s)
}

/// Identification data shipped next to an OBJ mesh.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObjSidecar {
    pub degree: i64,
    pub vertices: usize,
    pub faces: usize,
    /// One-based OBJ vertex indices glued by the antipodal map.
    pub identifications: Vec<[usize; 2]>,
}

fn half(x: i64) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else {
        format!("{}{}.5", if x < 0 { "-" } else { "" }, x.abs() / 2)
    }
}

/// OBJ mesh of a surface in the octahedron `|x|_1 <= d`, with its sidecar.
pub fn obj(p: &PatchworkComplex) -> Option<(String, ObjSidecar)> {
    if p.dim() != 3 {
        return None;
    }
    let view = complex_view(p);
    let mut s = String::new();
    let _ = writeln!(s, "# T-surface of degree {}", view.degree);
    for n in &view.nodes {
        let _ = writeln!(s, "v {} {} {}", half(n[0]), half(n[1]), half(n[2]));
    }
    for piece in &view.pieces {
        let ids: Vec<String> = piece.nodes.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(s, "f {}", ids.join(" "));
    }
    let sidecar = ObjSidecar {
        degree: view.degree,
        vertices: view.nodes.len(),
        faces: view.pieces.len(),
        identifications: view.identifications.iter().map(|[a, b]| [a + 1, b + 1]).collect(),
    };
    Some((s, sidecar))
}
