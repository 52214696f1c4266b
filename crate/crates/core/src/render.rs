//! DOT and SVG output.
//!
//! The SVG layout is barycentric: boundary vertices are pinned to a
//! regular polygon and every other vertex is repeatedly moved to the mean
//! of its neighbours.

use std::fmt::Write as _;

use crate::curvature::{classify_flat, PQParams};
use crate::map::PlanarMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("SVG layout needs a simple boundary")]
    BoundaryNotSimple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub text: String,
    pub format: RenderFormat,
    pub warning: Option<String>,
}

pub fn render(m: &PlanarMap, format: RenderFormat, pq: Option<&PQParams>) -> Result<Rendered, RenderError> {
    match format {
        RenderFormat::Dot => Ok(Rendered { text: to_dot(m, pq), format, warning: None }),
        RenderFormat::Svg => {
            if !m.is_boundary_simple() {
                return Err(RenderError::BoundaryNotSimple);
            }
            match to_svg(m, pq) {
                Some(text) => Ok(Rendered { text, format, warning: None }),
                None => Ok(Rendered {
                    text: to_dot(m, pq),
                    format: RenderFormat::Dot,
                    warning: Some("layout put two vertices on one point; wrote DOT instead".into()),
                }),
            }
        }
    }
}

fn non_flat_faces(m: &PlanarMap, pq: Option<&PQParams>) -> Vec<bool> {
    let mut out = vec![false; m.face_count()];
    if let Some(pq) = pq {
        for f in classify_flat(m, pq).non_flat_faces {
            out[f] = true;
        }
    }
    out
}

fn non_flat_vertices(m: &PlanarMap, pq: Option<&PQParams>) -> Vec<bool> {
    let mut out = vec![false; m.vertex_count()];
    if let Some(pq) = pq {
        for v in classify_flat(m, pq).non_flat_interior_vertices {
            out[v] = true;
        }
    }
    out
}

/// One line per vertex and per edge; faces are listed as comments.
pub fn to_dot(m: &PlanarMap, pq: Option<&PQParams>) -> String {
    let hot_f = non_flat_faces(m, pq);
    let hot_v = non_flat_vertices(m, pq);
    let mut s = String::from("graph map {\n");
    for (f, walk) in m.faces().iter().enumerate() {
        let vs: Vec<String> = walk.iter().map(|&d| m.origin(d).to_string()).collect();
        let tag = if hot_f[f] { " non-flat" } else { "" };
        let _ = writeln!(s, "  // face {f} degree {}{tag}: {}", walk.len(), vs.join(" "));
    }
    for v in 0..m.vertex_count() {
        let style = if hot_v[v] { " color=red" } else { "" };
        let _ = writeln!(s, "  v{v} [label=\"{v}\"{style}];");
    }
    for e in 0..m.edge_count() {
        let faces = [m.face_of(2 * e), m.face_of(2 * e + 1)];
        let label: Vec<String> = faces.iter().map(|f| f.map_or("out".to_string(), |f| f.to_string())).collect();
        let _ = writeln!(s, "  v{} -- v{} [label=\"e{e}\" faces=\"{}\"];", m.origin(2 * e), m.head(2 * e), label.join("|"));
    }
    s.push_str("}\n");
    s
}

const SIZE: f64 = 400.0;
const ITERATIONS: usize = 2000;

fn layout(m: &PlanarMap) -> Vec<(f64, f64)> {
    let n = m.vertex_count();
    let mut pos = vec![(0.0, 0.0); n];
    let mut pinned = vec![false; n];
    let ring = m.boundary_vertex_sequence();
    let k = ring.len().max(1) as f64;
    for (i, &v) in ring.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / k;
        pos[v] = (t.cos(), t.sin());
        pinned[v] = true;
    }
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| m.neighbors(v).collect()).collect();
    for _ in 0..ITERATIONS {
        for v in 0..n {
            if pinned[v] || nbrs[v].is_empty() {
                continue;
            }
            let (sx, sy) = nbrs[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let c = nbrs[v].len() as f64;
            pos[v] = (sx / c, sy / c);
        }
    }
    let half = SIZE / 2.0;
    pos.into_iter().map(|(x, y)| (half + 0.9 * half * x, half - 0.9 * half * y)).collect()
}

fn to_svg(m: &PlanarMap, pq: Option<&PQParams>) -> Option<String> {
    let pos = layout(m);
    let mut keys: Vec<(i64, i64)> = pos.iter().map(|&(x, y)| ((x * 100.0).round() as i64, (y * 100.0).round() as i64)).collect();
    keys.sort_unstable();
    if keys.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let hot_f = non_flat_faces(m, pq);
    let hot_v = non_flat_vertices(m, pq);
    let mut s = String::new();
    let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">");
    s.push_str("<style>.nonflat{fill:#f4a3a3;stroke:#c00;stroke-width:2} line{stroke:#222} circle{fill:#222} circle.nonflat{fill:#c00}</style>\n");
    for (f, walk) in m.faces().iter().enumerate() {
        if !hot_f[f] {
            continue;
        }
        let pts: Vec<String> = walk.iter().map(|&d| {
            let (x, y) = pos[m.origin(d)];
            format!("{x:.2},{y:.2}")
        }).collect();
        let _ = writeln!(s, "<polygon class=\"nonflat\" data-face=\"{f}\" points=\"{}\"/>", pts.join(" "));
    }
    for e in 0..m.edge_count() {
        let (a, b) = (pos[m.origin(2 * e)], pos[m.head(2 * e)]);
        let _ = writeln!(s, "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>", a.0, a.1, b.0, b.1);
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        let class = if hot_v[v] { " class=\"nonflat\"" } else { "" };
        let _ = writeln!(s, "<circle{class} cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"/>");
    }
    s.push_str("</svg>\n");
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{attach_boundary_face, gen_standard};

    #[test]
    fn grid_svg_counts() {
        let m = gen_standard(4, 2).unwrap();
        let out = render(&m, RenderFormat::Svg, None).unwrap();
        assert_eq!(out.format, RenderFormat::Svg);
        assert_eq!(out.text.matches("<circle").count(), 25);
        assert_eq!(out.text.matches("<line").count(), 40);
        let dot = render(&m, RenderFormat::Dot, None).unwrap();
        assert_eq!(dot.text.matches(" -- ").count(), 40);
    }

    #[test]
    fn pentagon_is_highlighted() {
        let pq = PQParams::standard(4, 4).unwrap();
        let m = attach_boundary_face(&gen_standard(4, 1).unwrap(), 0, 1, 5).unwrap();
        let out = render(&m, RenderFormat::Svg, Some(&pq)).unwrap();
        assert_eq!(out.text.matches("<polygon class=\"nonflat\"").count(), 1);
    }
}
