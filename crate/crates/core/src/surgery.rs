//! Adjustment to conditions (B) and (D), connecting forests, and cutting a
//! map open along a forest.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::curvature::{classify_flat, is_pq_star, satisfies_b, satisfies_d, PQParams};
use crate::edit::MapEditor;
use crate::exact::Rational;
use crate::map::{edge_of, twin, Dart, FaceId, MapError, PlanarMap, Vertex};
use crate::submap::{interior, strongly_interior_faces};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error("map is not a (p,q)*-map")]
    NotStar,
    #[error("map violates condition (B)")]
    NotB,
    #[error("forest does not fit the map: {0}")]
    ForestMismatch(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn first_large_face(m: &PlanarMap, p: usize) -> Option<FaceId> {
    (0..m.face_count()).find(|&f| m.face_degree(f) >= 2 * p)
}

/// Splits one face of degree `d >= 2p` into degrees `p + 1` and `d - p + 1`.
fn split_face_once(m: &PlanarMap, f: FaceId, p: usize) -> PlanarMap {
    let walk = m.face_walk(f);
    let d = walk.len();
    // prefer a diagonal between distinct vertices
    let s = (0..d).find(|&s| m.origin(walk[s]) != m.origin(walk[(s + p) % d])).unwrap_or(0);
    let mut ed = MapEditor::from_map(m);
    ed.insert_edge(walk[s], walk[(s + p) % d]);
    ed.finish().expect("diagonal keeps the map valid").map
}

/// Cuts every face of degree at least 2p by diagonals.
pub fn subdivide_large_faces(m: &PlanarMap, pq: &PQParams) -> PlanarMap {
    let p = pq.pi();
    let mut cur = m.clone();
    while let Some(f) = first_large_face(&cur, p) {
        cur = split_face_once(&cur, f, p);
    }
    cur
}

/// Rotation position where the split window of `q` darts starts. For an
/// exterior vertex the window and both gaps it cuts avoid outer corners,
/// so all boundary passages stay with the remaining vertex.
fn split_window(m: &PlanarMap, v: Vertex, q: usize) -> usize {
    let r = m.rotation(v);
    let d = r.len();
    let outer_corner = |i: usize| m.is_outer_dart(r[i % d]);
    let valid: Vec<usize> = (0..d).filter(|&s| (s..=s + q).all(|i| !outer_corner(i))).collect();
    valid.into_iter().min_by_key(|&s| r[s]).unwrap_or(0)
}

/// Splits every vertex of degree at least 2q into degrees `q + 1` and
/// `d - q + 1`.
pub fn split_large_vertices(m: &PlanarMap, pq: &PQParams) -> PlanarMap {
    let q = pq.qi();
    let mut cur = m.clone();
    while let Some(v) = (0..cur.vertex_count()).find(|&v| cur.vertex_degree(v) >= 2 * q) {
        let start = split_window(&cur, v, q);
        let mut ed = MapEditor::from_map(&cur);
        ed.split_vertex(v, start, q);
        cur = ed.finish().expect("vertex split keeps the map valid").map;
    }
    cur
}

/// Alternates face subdivision and vertex splitting until (B) holds.
pub fn adjust_to_b(m: &PlanarMap, pq: &PQParams) -> PlanarMap {
    let mut cur = m.clone();
    let cap = 4 * (m.dart_count() + m.face_count() + 8);
    for _ in 0..cap {
        if satisfies_b(&cur, pq) {
            return cur;
        }
        cur = subdivide_large_faces(&cur, pq);
        cur = split_large_vertices(&cur, pq);
    }
    panic!("adjustment to condition (B) did not settle");
}

#[derive(Debug, Clone)]
pub enum TrimOutcome {
    Trimmed { map: PlanarMap, removed: usize },
    /// Every face was cut away.
    Emptied { removed: usize },
}

impl TrimOutcome {
    pub fn removed(&self) -> usize {
        match self {
            TrimOutcome::Trimmed { removed, .. } | TrimOutcome::Emptied { removed } => *removed,
        }
    }

    pub fn map(&self) -> Option<&PlanarMap> {
        match self {
            TrimOutcome::Trimmed { map, .. } => Some(map),
            TrimOutcome::Emptied { .. } => None,
        }
    }
}

/// Cuts away exterior faces of degree below p, and then any pendant edges,
/// until every face has degree at least p.
pub fn trim_to_condition_d(m: &PlanarMap, pq: &PQParams) -> Result<TrimOutcome, SurgeryError> {
    if !satisfies_b(m, pq) {
        return Err(SurgeryError::NotB);
    }
    let p = pq.pi();
    let mut cur = m.clone();
    let mut removed = 0;
    loop {
        if cur.face_count() == 0 {
            return Ok(TrimOutcome::Emptied { removed });
        }
        let target = (0..cur.face_count()).find_map(|f| {
            if cur.face_degree(f) >= p {
                return None;
            }
            cur.face_walk(f).iter().copied().filter(|&d| cur.is_outer_dart(twin(d))).min()
        });
        let Some(d) = target else { break };
        let mut ed = MapEditor::from_map(&cur);
        ed.remove_edge(d);
        removed += 1;
        prune_pendants(&mut ed);
        cur = ed.finish()?.map;
    }
    debug_assert!(satisfies_d(&cur, pq));
    Ok(TrimOutcome::Trimmed { map: cur, removed })
}

fn prune_pendants(ed: &mut MapEditor) {
    while let Some(v) = (0..ed.vertex_slots()).find(|&v| ed.vertex_alive(v) && ed.degree(v) == 1) {
        let d = ed.rotation(v)[0];
        ed.remove_edge(d);
        ed.remove_vertex(v);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjustReport {
    pub perimeter_before: usize,
    pub area_before: usize,
    pub perimeter_after: usize,
    pub area_after: usize,
    pub removed_faces: usize,
    pub emptied: bool,
}

/// Full adjustment: (B) by subdivision and splitting, then (D) by trimming.
pub fn adjust_to_star(m: &PlanarMap, pq: &PQParams) -> (TrimOutcome, AdjustReport) {
    let b = adjust_to_b(m, pq);
    let outcome = trim_to_condition_d(&b, pq).expect("(B) holds after adjustment");
    let (perimeter_after, area_after) = match outcome.map() {
        Some(x) => (x.perimeter(), x.area()),
        None => (0, 0),
    };
    let report = AdjustReport {
        perimeter_before: m.perimeter(),
        area_before: m.area(),
        perimeter_after,
        area_after,
        removed_faces: outcome.removed(),
        emptied: outcome.map().is_none(),
    };
    (outcome, report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestTree {
    pub anchor: Vertex,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
}

/// An acyclic edge set joining every non-flat face and non-flat interior
/// vertex to the boundary, one boundary vertex per tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectingForest {
    pub edges: Vec<usize>,
    pub trees: Vec<ForestTree>,
    pub d: usize,
}

/// Shortest way along the boundary of face `f` from `v` to a vertex in
/// `targets`; returns edge ids. `None` when `v` is not on `f`.
fn path_around_face(m: &PlanarMap, f: FaceId, v: Vertex, targets: &[bool]) -> Option<Vec<usize>> {
    let walk = m.face_walk(f);
    let d = walk.len();
    let mut best: Option<Vec<usize>> = None;
    for (i, &x) in walk.iter().enumerate() {
        if m.origin(x) != v {
            continue;
        }
        // forward along the walk
        let mut fwd = Vec::new();
        for k in 0..d {
            let y = walk[(i + k) % d];
            if targets[m.origin(y)] {
                break;
            }
            fwd.push(edge_of(y));
            if k + 1 == d {
                fwd.clear();
                fwd.push(usize::MAX);
            }
        }
        // backward against the walk
        let mut bwd = Vec::new();
        let mut cur = v;
        for k in 1..=d {
            if targets[cur] {
                break;
            }
            let y = walk[(i + d - k) % d];
            bwd.push(edge_of(y));
            cur = m.origin(y);
            if k == d && !targets[cur] {
                bwd.clear();
                bwd.push(usize::MAX);
            }
        }
        for cand in [fwd, bwd] {
            if cand.contains(&usize::MAX) {
                continue;
            }
            if best.as_ref().map_or(true, |b| cand.len() < b.len()) {
                best = Some(cand);
            }
        }
    }
    best
}

/// Shortest path to the boundary around some weakly exterior face at `v`.
fn connect_around(m: &PlanarMap, v: Vertex, ext: &[bool], weak_ext: &[bool]) -> Option<Vec<usize>> {
    let faces: BTreeSet<FaceId> = m.rotation(v).iter().filter_map(|&d| m.face_of(d)).collect();
    faces
        .into_iter()
        .filter(|&f| weak_ext[f])
        .filter_map(|f| path_around_face(m, f, v, ext))
        .min_by_key(|p| p.len())
}

/// Edge set before the spanning-forest cleanup: the recursive forest of
/// each interior component plus short connectors to the boundary.
fn connector_edges(m: &PlanarMap, pq: &PQParams) -> BTreeSet<usize> {
    let ext = m.exterior_flags();
    let si = strongly_interior_faces(m);
    let weak_ext: Vec<bool> = si.iter().map(|&s| !s).collect();
    let cls = classify_flat(m, pq);
    let mut out = BTreeSet::new();
    let mut anchors: BTreeSet<Vertex> = BTreeSet::new();
    let mut inside_m0 = vec![false; m.vertex_count()];

    let dec = interior(m);
    for comp in &dec.components {
        let Ok(sa) = comp.to_map() else {
            // a non-simple piece falls back to direct connectors for its elements
            continue;
        };
        let child = &sa.map;
        let child_ext = child.exterior_flags();
        for cv in 0..child.vertex_count() {
            if !child_ext[cv] {
                inside_m0[sa.parent_vertex(cv)] = true;
            }
        }
        let inner = connecting_forest_unchecked(child, pq);
        let edge_back: BTreeMap<usize, usize> = comp.edges.iter().enumerate().map(|(i, &e)| (i, e)).collect();
        for t in &inner.trees {
            anchors.insert(sa.parent_vertex(t.anchor));
            for e in &t.edges {
                out.insert(edge_back[e]);
            }
        }
        // non-flat faces of the piece that reach its boundary directly
        for &f in &comp.faces {
            if Some(m.face_degree(f)) != Some(pq.pi()) {
                let on_bd = m.face_vertices(f).into_iter().filter(|&v| comp_boundary_has(comp, v)).min();
                if let Some(v) = on_bd {
                    anchors.insert(v);
                }
            }
        }
    }
    for &v in &anchors {
        if let Some(path) = connect_around(m, v, &ext, &weak_ext) {
            out.extend(path);
        }
    }
    for &v in &cls.non_flat_interior_vertices {
        if inside_m0[v] {
            continue;
        }
        if let Some(path) = connect_around(m, v, &ext, &weak_ext) {
            out.extend(path);
        }
    }
    out
}

fn comp_boundary_has(comp: &crate::submap::Submap, v: Vertex) -> bool {
    comp.boundary_walks.iter().flatten().any(|&d| comp.parent.origin(d) == v)
}

fn connecting_forest_unchecked(m: &PlanarMap, pq: &PQParams) -> ConnectingForest {
    let union = connector_edges(m, pq);
    let ext = m.exterior_flags();
    let n = m.vertex_count();
    // breadth-first forest inside the union, rooted at all boundary vertices
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut root: Vec<Option<Vertex>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if ext[v] {
            root[v] = Some(v);
            depth[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        let mut darts: Vec<Dart> = m.rotation(v).iter().copied().filter(|&d| union.contains(&edge_of(d))).collect();
        darts.sort_unstable();
        for d in darts {
            let w = m.head(d);
            if ext[w] || root[w].is_some() {
                continue;
            }
            root[w] = root[v];
            depth[w] = depth[v] + 1;
            parent_edge[w] = Some(edge_of(d));
            queue.push_back(w);
        }
    }
    // required vertices: non-flat interior vertices and one vertex per
    // non-flat face that does not touch the boundary
    let cls = classify_flat(m, pq);
    let mut required = vec![false; n];
    for &v in &cls.non_flat_interior_vertices {
        required[v] = true;
    }
    for &f in &cls.non_flat_faces {
        let vs = m.face_vertices(f);
        if vs.iter().any(|&v| ext[v]) {
            continue;
        }
        if let Some(&v) = vs.iter().filter(|&&v| root[v].is_some()).min_by_key(|&&v| (depth[v], v)) {
            required[v] = true;
        }
    }
    // prune unneeded leaves
    let mut child_count = vec![0usize; n];
    for v in 0..n {
        if let Some(e) = parent_edge[v] {
            let up = other_end(m, e, v);
            child_count[up] += 1;
        }
    }
    let mut keep: Vec<bool> = (0..n).map(|v| parent_edge[v].is_some()).collect();
    let mut stack: Vec<Vertex> = (0..n).filter(|&v| keep[v] && child_count[v] == 0 && !required[v]).collect();
    while let Some(v) = stack.pop() {
        keep[v] = false;
        let up = other_end(m, parent_edge[v].unwrap(), v);
        child_count[up] -= 1;
        if child_count[up] == 0 && parent_edge[up].is_some() && !required[up] {
            stack.push(up);
        }
    }
    let mut by_root: BTreeMap<Vertex, ForestTree> = BTreeMap::new();
    for v in 0..n {
        if !keep[v] {
            continue;
        }
        let r = root[v].unwrap();
        let t = by_root.entry(r).or_insert_with(|| ForestTree { anchor: r, vertices: vec![r], edges: Vec::new() });
        t.vertices.push(v);
        t.edges.push(parent_edge[v].unwrap());
    }
    let mut trees: Vec<ForestTree> = by_root.into_values().collect();
    for t in &mut trees {
        t.vertices.sort_unstable();
        t.edges.sort_unstable();
    }
    let mut edges: Vec<usize> = trees.iter().flat_map(|t| t.edges.iter().copied()).collect();
    edges.sort_unstable();
    let d = edges.len();
    ConnectingForest { edges, trees, d }
}

fn other_end(m: &PlanarMap, e: usize, v: Vertex) -> Vertex {
    let (a, b) = (m.origin(2 * e), m.head(2 * e));
    if a == v {
        b
    } else {
        a
    }
}

/// Violations of the forest invariants, empty when all hold.
pub fn forest_violations(m: &PlanarMap, pq: &PQParams, forest: &ConnectingForest) -> Vec<String> {
    let mut out = Vec::new();
    let ext = m.exterior_flags();
    let n = m.vertex_count();
    // acyclic with one boundary vertex per component
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut touched = vec![false; n];
    for &e in &forest.edges {
        let (a, b) = (m.origin(2 * e), m.head(2 * e));
        touched[a] = true;
        touched[b] = true;
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra == rb {
            out.push(format!("edge {e} closes a cycle"));
        } else {
            uf[ra] = rb;
        }
    }
    let mut boundary_per_tree: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        if touched[v] {
            let r = find(&mut uf, v);
            *boundary_per_tree.entry(r).or_default() += usize::from(ext[v]);
        }
    }
    for (r, c) in &boundary_per_tree {
        if *c != 1 {
            out.push(format!("tree at {r} meets the boundary {c} times"));
        }
    }
    let connected = |v: Vertex, uf: &mut Vec<usize>| ext[v] || (touched[v] && {
        let r = find(uf, v);
        boundary_per_tree.get(&r) == Some(&1)
    });
    let cls = classify_flat(m, pq);
    for &v in &cls.non_flat_interior_vertices {
        if !connected(v, &mut uf) {
            out.push(format!("non-flat vertex {v} is not connected"));
        }
    }
    for &f in &cls.non_flat_faces {
        if !m.face_vertices(f).into_iter().any(|v| connected(v, &mut uf)) {
            out.push(format!("non-flat face {f} is not connected"));
        }
    }
    let bound = (pq.pi() - 1) * m.perimeter();
    if forest.d > bound {
        out.push(format!("forest has {} edges, above (p-1)n = {bound}", forest.d));
    }
    out
}

/// Builds the connecting forest of a (p,q)*-map and checks its invariants,
/// including the size bound `D <= (p-1) n`.
pub fn connecting_forest(m: &PlanarMap, pq: &PQParams) -> Result<ConnectingForest, SurgeryError> {
    if !is_pq_star(m, pq) {
        return Err(SurgeryError::NotStar);
    }
    let forest = connecting_forest_unchecked(m, pq);
    let bad = forest_violations(m, pq, &forest);
    if let Some(v) = bad.into_iter().next() {
        return Err(SurgeryError::Invariant(v));
    }
    Ok(forest)
}

#[derive(Debug, Clone)]
pub struct CutResult {
    pub map: PlanarMap,
    pub perimeter_before: usize,
    pub d: usize,
}

/// Slits the map open along every forest edge, always taking the smallest
/// remaining dart that leaves the current boundary toward the interior.
pub fn cut_along_forest(m: &PlanarMap, forest: &ConnectingForest) -> Result<CutResult, SurgeryError> {
    let mut remaining: BTreeSet<usize> = BTreeSet::new();
    for &e in &forest.edges {
        if e >= m.edge_count() {
            return Err(SurgeryError::ForestMismatch(format!("edge {e} out of range")));
        }
        remaining.insert(e);
    }
    let mut ed = MapEditor::from_map(m);
    let mut on_boundary: BTreeSet<Vertex> = m.exterior_vertices().into_iter().collect();
    while !remaining.is_empty() {
        let pick = remaining
            .iter()
            .flat_map(|&e| [2 * e, 2 * e + 1])
            .filter(|&d| on_boundary.contains(&ed.origin(d)) && !on_boundary.contains(&ed.head(d)))
            .min();
        let Some(d) = pick else {
            return Err(SurgeryError::ForestMismatch("no forest edge leaves the boundary".into()));
        };
        let (w, _) = ed.slit_edge(d).map_err(|e| SurgeryError::ForestMismatch(e.into()))?;
        on_boundary.insert(w);
        on_boundary.insert(ed.head(d));
        remaining.remove(&edge_of(d));
    }
    let map = ed.finish()?.map;
    Ok(CutResult { map, perimeter_before: m.perimeter(), d: forest.d })
}

/// Every component of the interior has only flat faces and flat inner
/// vertices. This is what cutting along a connecting forest should leave.
pub fn interior_is_flat(m: &PlanarMap, pq: &PQParams) -> bool {
    let p = pq.p();
    let q = pq.q();
    interior(m).components.iter().all(|c| {
        let rim: BTreeSet<Vertex> = c.boundary_vertices().into_iter().collect();
        c.faces.iter().all(|&f| Rational::from(m.face_degree(f)) == *p)
            && c.vertices.iter().filter(|v| !rim.contains(v)).all(|&v| Rational::from(m.vertex_degree(v)) == *q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{attach_boundary_face, gen_standard, perturb_defects, polygon};

    #[test]
    fn octagon_splits_into_pentagons() {
        let pq = PQParams::standard(4, 4).unwrap();
        let out = subdivide_large_faces(&polygon(8), &pq);
        let mut degs: Vec<usize> = (0..out.face_count()).map(|f| out.face_degree(f)).collect();
        degs.sort();
        assert_eq!(degs, vec![5, 5]);
        let out = subdivide_large_faces(&polygon(13), &pq);
        assert!((0..out.face_count()).all(|f| (5..=7).contains(&out.face_degree(f))));
        let g = gen_standard(4, 2).unwrap();
        assert_eq!(subdivide_large_faces(&g, &pq), g);
        assert_eq!(split_large_vertices(&g, &pq), g);
    }

    #[test]
    fn trimming_removes_a_glued_triangle() {
        let pq = PQParams::standard(4, 4).unwrap();
        let g = gen_standard(4, 2).unwrap();
        let with_tri = attach_boundary_face(&g, 0, 1, 3).unwrap();
        let out = trim_to_condition_d(&with_tri, &pq).unwrap();
        assert_eq!(out.removed(), 1);
        assert_eq!(out.map().unwrap().area(), g.area());
        let same = trim_to_condition_d(&g, &pq).unwrap();
        assert_eq!(same.removed(), 0);
        assert!(matches!(trim_to_condition_d(&polygon(3), &pq).unwrap(), TrimOutcome::Emptied { removed: 1 }));
    }

    #[test]
    fn forests_on_grids() {
        let pq = PQParams::standard(4, 4).unwrap();
        let g = gen_standard(4, 3).unwrap();
        let f = connecting_forest(&g, &pq).unwrap();
        assert_eq!(f.d, 0);
        let cut = cut_along_forest(&g, &f).unwrap();
        assert_eq!(cut.map, g);
        let m = perturb_defects(&gen_standard(4, 4).unwrap(), &pq, 2, 11).unwrap();
        let f = connecting_forest(&m, &pq).unwrap();
        assert!(f.d > 0);
        let cut = cut_along_forest(&m, &f).unwrap();
        assert_eq!(cut.map.perimeter(), m.perimeter() + 2 * f.d);
        assert_eq!(cut.map.area(), m.area());
    }
}
