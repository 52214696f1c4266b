//! Corridors in (4,4)-maps: strips of faces glued along non-adjacent edges,
//! plus the three local surgeries built on them.
//!
//! A corridor is stored as gluing darts `e_0, ..., e_t` and faces
//! `F_1, ..., F_t` where `F_i` contains `e_{i-1}` and `twin(e_i)`. Every
//! gluing dart runs from the "left" side to the "right" side; `e_0` and
//! `e_t` lie on the boundary.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::curvature::{is_pq_map, PQParams};
use crate::edit::MapEditor;
use crate::map::{edge_of, twin, Dart, FaceId, MapError, PlanarMap, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorridorError {
    #[error("corridors need a (4,4)-map")]
    NotFourFour,
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("face {0} has no edge opposite the incoming gluing edge")]
    NoContinuation(FaceId),
    #[error("corridor returns to edge {0}")]
    Cycle(usize),
    #[error("a corridor side passes vertex {0} twice")]
    SideNotSimple(Vertex),
    #[error("face {0} of the corridor is not a square")]
    NotAllSquares(FaceId),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// How to leave a face of degree at least five.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContinuationRule {
    /// The edge closest to opposite the entry edge; ties go to the smaller dart.
    #[default]
    Antipodal,
    /// The first edge not adjacent to the entry, counting along the face walk.
    First,
    /// The last edge not adjacent to the entry.
    Last,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corridor {
    pub gluing: Vec<Dart>,
    pub faces: Vec<FaceId>,
    /// Vertices along the side through the gluing-dart origins.
    pub left: Vec<Vertex>,
    /// Vertices along the side through the gluing-dart heads.
    pub right: Vec<Vertex>,
}

impl Corridor {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn left_length(&self) -> usize {
        self.left.len() - 1
    }

    pub fn right_length(&self) -> usize {
        self.right.len() - 1
    }

    /// First vertex visited twice by either side.
    pub fn repeated_side_vertex(&self) -> Option<Vertex> {
        [&self.left, &self.right].into_iter().find_map(|side| {
            let mut seen = BTreeSet::new();
            side.iter().copied().find(|&v| !seen.insert(v))
        })
    }
}

fn walk_from(m: &PlanarMap, d: Dart) -> Vec<Dart> {
    let mut out = vec![d];
    let mut x = m.phi(d);
    while x != d {
        out.push(x);
        x = m.phi(x);
    }
    out
}

fn exit_index(walk: &[Dart], rule: ContinuationRule) -> Option<usize> {
    let d = walk.len();
    if d < 4 {
        return None;
    }
    Some(match rule {
        ContinuationRule::First => 2,
        ContinuationRule::Last => d - 2,
        ContinuationRule::Antipodal => (2..=d - 2).min_by_key(|&j| ((2 * j).abs_diff(d), walk[j])).unwrap(),
    })
}

fn require_four_four(m: &PlanarMap) -> Result<(), CorridorError> {
    let pq = PQParams::standard(4, 4).expect("(4,4) is Euclidean");
    match is_pq_map(m, &pq) {
        Ok(v) if v.holds => Ok(()),
        _ => Err(CorridorError::NotFourFour),
    }
}

/// Follows gluing darts from `g` through bounded faces until the boundary.
fn extend(m: &PlanarMap, mut g: Dart, rule: ContinuationRule, seen: &mut BTreeSet<usize>) -> Result<Vec<Dart>, CorridorError> {
    let mut out = Vec::new();
    while let Some(f) = m.face_of(g) {
        let walk = walk_from(m, g);
        let j = exit_index(&walk, rule).ok_or(CorridorError::NoContinuation(f))?;
        g = twin(walk[j]);
        if !seen.insert(edge_of(g)) {
            return Err(CorridorError::Cycle(edge_of(g)));
        }
        out.push(g);
    }
    Ok(out)
}

/// Assembles sides and faces from a full gluing sequence.
fn from_gluing(m: &PlanarMap, gluing: Vec<Dart>) -> Corridor {
    let mut faces = Vec::new();
    let mut left = vec![m.origin(gluing[0])];
    let mut right = vec![m.head(gluing[0])];
    for w in gluing.windows(2) {
        let walk = walk_from(m, w[0]);
        let j = walk.iter().position(|&d| d == twin(w[1])).expect("gluing darts share a face");
        faces.push(m.face_of(w[0]).expect("bounded face"));
        right.extend(walk[1..j].iter().map(|&d| m.head(d)));
        left.extend(walk[j + 1..].iter().rev().map(|&d| m.origin(d)));
    }
    Corridor { gluing, faces, left, right }
}

/// The maximal corridor through edge `e`, extended both ways to the boundary.
pub fn build_corridor(m: &PlanarMap, e: usize, rule: ContinuationRule) -> Result<Corridor, CorridorError> {
    if e >= m.edge_count() {
        return Err(CorridorError::NoSuchEdge(e));
    }
    require_four_four(m)?;
    // orient so the walk forward starts in a bounded face when possible
    let start = if m.face_of(2 * e).is_some() { 2 * e } else { 2 * e + 1 };
    let mut seen = BTreeSet::from([e]);
    let fwd = extend(m, start, rule, &mut seen)?;
    let back = extend(m, twin(start), rule, &mut seen)?;
    let mut gluing: Vec<Dart> = back.into_iter().rev().map(twin).collect();
    gluing.push(start);
    gluing.extend(fwd);
    let c = from_gluing(m, gluing);
    if let Some(v) = c.repeated_side_vertex() {
        return Err(CorridorError::SideNotSimple(v));
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct Collapsed {
    pub map: PlanarMap,
    /// Old vertex to new vertex; the two ends of each gluing edge merge.
    pub vertex_map: Vec<Vertex>,
}

/// Removes a corridor of squares and glues its two sides together.
pub fn collapse_corridor(m: &PlanarMap, c: &Corridor) -> Result<Collapsed, CorridorError> {
    let mut side_edges = Vec::new();
    for (i, &f) in c.faces.iter().enumerate() {
        let walk = walk_from(m, c.gluing[i]);
        if walk.len() != 4 || walk[2] != twin(c.gluing[i + 1]) {
            return Err(CorridorError::NotAllSquares(f));
        }
        side_edges.push(walk[1]);
    }
    let mut ed = MapEditor::from_map(m);
    let mut merged_into: Vec<Vertex> = (0..m.vertex_count()).collect();
    for &g in &c.gluing {
        if ed.origin(g) == ed.head(g) {
            return Err(CorridorError::Precondition("gluing edge became a loop".into()));
        }
        let (keep, gone) = (ed.origin(g), ed.head(g));
        ed.contract_edge(g);
        for slot in merged_into.iter_mut() {
            if *slot == gone {
                *slot = keep;
            }
        }
    }
    for &d in &side_edges {
        ed.remove_edge(d);
    }
    let fin = ed.finish()?;
    let vertex_map = merged_into.iter().map(|&v| fin.vertex_map[v].expect("kept vertex")).collect();
    Ok(Collapsed { map: fin.map, vertex_map })
}

/// Lowers the degree of corridor face `index` (1-based) by one. Gluing
/// edges from that face onward are shifted one step along a side, up to
/// the boundary end of the corridor, where the last one is dropped along
/// with any boundary spur that leaves behind.
pub fn reduce_face_degree(m: &PlanarMap, c: &Corridor, index: usize) -> Result<PlanarMap, CorridorError> {
    if index == 0 || index > c.len() {
        return Err(CorridorError::Precondition(format!("face index {index} outside 1..={}", c.len())));
    }
    let f = c.faces[index - 1];
    if m.face_degree(f) < 5 {
        return Err(CorridorError::Precondition(format!("face {f} has degree {} below 5", m.face_degree(f))));
    }
    let walk = walk_from(m, c.gluing[index - 1]);
    let j = walk.iter().position(|&d| d == twin(c.gluing[index])).expect("corridor face");
    let d = walk.len();
    // shift along the left side when it is long enough, else the right
    let use_left = d - j - 1 >= 2;
    if !use_left && j < 3 {
        return Err(CorridorError::Precondition("both sides of the face are single edges".into()));
    }
    let mut ed = MapEditor::from_map(m);
    let mut incoming = c.gluing[index - 1];
    for s in index..=c.len() {
        let walk = ed.walk(incoming);
        let out = twin(c.gluing[s]);
        let j = walk.iter().position(|&x| x == out).expect("gluing dart on current face");
        let k = walk.len();
        let x = if use_left {
            ed.insert_edge(walk[(j + 2) % k], walk[j])
        } else {
            ed.insert_edge(walk[(j + 1) % k], walk[j - 1])
        };
        let ends = [ed.origin(out), ed.head(out)];
        ed.remove_edge(out);
        incoming = x;
        if s == c.len() {
            // the last shift can strand a spur on the boundary
            for v in ends {
                prune_spur(&mut ed, v);
            }
        }
    }
    Ok(ed.finish()?.map)
}

fn prune_spur(ed: &mut MapEditor, mut v: Vertex) {
    while ed.degree(v) == 1 {
        let d = ed.rotation(v)[0];
        let next = ed.head(d);
        ed.remove_edge(d);
        ed.remove_vertex(v);
        v = next;
    }
}

/// Total excess `sum max(0, deg - 4)` over the corridor faces.
pub fn corridor_excess(m: &PlanarMap, c: &Corridor) -> usize {
    c.faces.iter().map(|&f| m.face_degree(f).saturating_sub(4)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalMove {
    pub from: Vertex,
    pub to: Vertex,
    pub split_degree: usize,
}

/// Splits every face of degree at least 7 by diagonals that cut off a
/// square, choosing each diagonal so its ends lie at distances from
/// `center` that differ by at most one. Distances to `center` are kept
/// exactly; no distance grows. Vertex ids are unchanged.
pub fn distance_preserving_subdivision(m: &PlanarMap, center: Vertex) -> (PlanarMap, Vec<DiagonalMove>) {
    const STEP: usize = 3;
    let mut cur = m.clone();
    let mut log = Vec::new();
    let dist = m.distances(center);
    while let Some(f) = (0..cur.face_count()).find(|&f| cur.face_degree(f) >= 7) {
        let walk = cur.face_walk(f);
        let k = walk.len();
        let vs: Vec<Vertex> = walk.iter().map(|&d| cur.origin(d)).collect();
        let close = |i: usize| dist[vs[i]].abs_diff(dist[vs[(i + STEP) % k]]) <= 1;
        let i = (0..k)
            .find(|&i| close(i) && vs[i] != vs[(i + STEP) % k])
            .or_else(|| (0..k).find(|&i| close(i)))
            .expect("some diagonal meets the distance criterion");
        let mut ed = MapEditor::from_map(&cur);
        ed.insert_edge(walk[i], walk[(i + STEP) % k]);
        log.push(DiagonalMove { from: vs[i], to: vs[(i + STEP) % k], split_degree: k });
        cur = ed.finish().expect("diagonal keeps the map valid").map;
    }
    (cur, log)
}
