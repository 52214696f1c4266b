//! Face-induced submaps, the interior decomposition, grown balls and shells.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::curvature::{classify_flat, is_pq_map, pq_curvatures, CurvatureError, PQParams};
use crate::exact::Rational;
use crate::map::{edge_of, twin, Dart, FaceId, MapError, PlanarMap, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubmapError {
    #[error("empty face selection")]
    Empty,
    #[error("face {0} does not exist")]
    NoSuchFace(FaceId),
    #[error("submap is not simple")]
    NotSimple,
    #[error("rebuilt submap is invalid: {0}")]
    Map(#[from] MapError),
}

/// The subcomplex made of some bounded faces with all their edges and
/// vertices. Boundary walks are the orbits of the restricted rotation that
/// do not belong to a selected face; like the outer orbit of a map they
/// keep the unselected side on their right.
#[derive(Debug, Clone)]
pub struct Submap<'a> {
    pub parent: &'a PlanarMap,
    pub faces: Vec<FaceId>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
    pub boundary_walks: Vec<Vec<Dart>>,
    pub connected: bool,
    pub simple: bool,
}

impl<'a> Submap<'a> {
    pub fn perimeter(&self) -> usize {
        self.boundary_walks.iter().map(|w| w.len()).sum()
    }

    pub fn area(&self) -> usize {
        self.faces.len()
    }

    /// Vertices met by the boundary walks, ascending.
    pub fn boundary_vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> =
            self.boundary_walks.iter().flatten().map(|&d| self.parent.origin(d)).collect();
        set.into_iter().collect()
    }

    pub fn contains_face(&self, f: FaceId) -> bool {
        self.faces.binary_search(&f).is_ok()
    }

    /// The submap as a standalone map, with parent-to-child vertex and dart
    /// maps. Only simple submaps convert.
    pub fn to_map(&self) -> Result<Standalone, SubmapError> {
        if !self.simple {
            return Err(SubmapError::NotSimple);
        }
        let m = self.parent;
        let mut vmap = vec![None; m.vertex_count()];
        for (i, &v) in self.vertices.iter().enumerate() {
            vmap[v] = Some(i);
        }
        let mut dmap = vec![None; m.dart_count()];
        for (i, &e) in self.edges.iter().enumerate() {
            dmap[2 * e] = Some(2 * i);
            dmap[2 * e + 1] = Some(2 * i + 1);
        }
        let rotations = self
            .vertices
            .iter()
            .map(|&v| m.rotation(v).iter().filter_map(|&d| dmap[d]).collect())
            .collect();
        let outer = self.boundary_walks.first().and_then(|w| dmap[w[0]]);
        let map = PlanarMap::new(rotations, outer)?;
        Ok(Standalone { map, vertex_map: vmap, dart_map: dmap })
    }
}

#[derive(Debug, Clone)]
pub struct Standalone {
    pub map: PlanarMap,
    pub vertex_map: Vec<Option<Vertex>>,
    pub dart_map: Vec<Option<Dart>>,
}

impl Standalone {
    /// Child vertex id back to the parent id.
    pub fn parent_vertex(&self, child: Vertex) -> Vertex {
        self.vertex_map.iter().position(|&x| x == Some(child)).expect("child vertex")
    }
}

pub fn extract_submap<'a>(m: &'a PlanarMap, faces: &[FaceId]) -> Result<Submap<'a>, SubmapError> {
    if faces.is_empty() {
        return Err(SubmapError::Empty);
    }
    if let Some(&f) = faces.iter().find(|&&f| f >= m.face_count()) {
        return Err(SubmapError::NoSuchFace(f));
    }
    let mut sel = vec![false; m.face_count()];
    for &f in faces {
        sel[f] = true;
    }
    let in_sel = |d: Dart| m.face_of(d).is_some_and(|f| sel[f]);
    let kept: Vec<bool> = (0..m.edge_count()).map(|e| in_sel(2 * e) || in_sel(2 * e + 1)).collect();
    let edges: Vec<usize> = (0..m.edge_count()).filter(|&e| kept[e]).collect();
    let vset: BTreeSet<Vertex> = edges.iter().flat_map(|&e| [m.origin(2 * e), m.head(2 * e)]).collect();
    let vertices: Vec<Vertex> = vset.into_iter().collect();

    // successor in the restricted rotation
    let next_kept = |d: Dart| {
        let mut x = m.rot_next(d);
        while !kept[edge_of(x)] {
            x = m.rot_next(x);
        }
        x
    };
    let mut seen = vec![false; m.dart_count()];
    let mut boundary_walks = Vec::new();
    for &e in &edges {
        for d in [2 * e, 2 * e + 1] {
            if seen[d] || in_sel(d) {
                continue;
            }
            let mut walk = Vec::new();
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                walk.push(x);
                x = next_kept(twin(x));
            }
            boundary_walks.push(walk);
        }
    }

    let connected = {
        let mut reached = BTreeSet::new();
        let mut queue = VecDeque::from([vertices[0]]);
        reached.insert(vertices[0]);
        while let Some(v) = queue.pop_front() {
            for &d in m.rotation(v) {
                if kept[edge_of(d)] && reached.insert(m.head(d)) {
                    queue.push_back(m.head(d));
                }
            }
        }
        reached.len() == vertices.len()
    };
    let mut faces = faces.to_vec();
    faces.sort_unstable();
    faces.dedup();
    let euler = vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
    let walk_simple = boundary_walks.len() == 1 && {
        let mut seen_v = BTreeSet::new();
        boundary_walks[0].iter().all(|&d| seen_v.insert(m.origin(d)))
    };
    let simple = connected && euler == 1 && walk_simple;
    Ok(Submap { parent: m, faces, vertices, edges, boundary_walks, connected, simple })
}

/// Faces sharing no vertex with the boundary.
pub fn strongly_interior_faces(m: &PlanarMap) -> Vec<bool> {
    let ext = m.exterior_flags();
    (0..m.face_count()).map(|f| m.face_vertices(f).iter().all(|&v| !ext[v])).collect()
}

/// Faces sharing at least a vertex with the boundary.
pub fn weakly_exterior_faces(m: &PlanarMap) -> Vec<FaceId> {
    let si = strongly_interior_faces(m);
    (0..m.face_count()).filter(|&f| !si[f]).collect()
}

#[derive(Debug, Clone)]
pub struct InteriorDecomposition<'a> {
    pub components: Vec<Submap<'a>>,
    pub y_length: usize,
}

/// Groups `selected` faces into classes joined through shared edges.
fn edge_components(m: &PlanarMap, selected: &[bool]) -> Vec<Vec<FaceId>> {
    let mut comp = vec![usize::MAX; m.face_count()];
    let mut out: Vec<Vec<FaceId>> = Vec::new();
    for s in 0..m.face_count() {
        if !selected[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut faces = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < faces.len() {
            let f = faces[i];
            i += 1;
            for &d in m.face_walk(f) {
                if let Some(g) = m.face_of(twin(d)) {
                    if selected[g] && comp[g] == usize::MAX {
                        comp[g] = id;
                        faces.push(g);
                    }
                }
            }
        }
        faces.sort_unstable();
        out.push(faces);
    }
    out
}

/// The union of strongly interior faces, split into edge-connected pieces.
pub fn interior(m: &PlanarMap) -> InteriorDecomposition<'_> {
    let si = strongly_interior_faces(m);
    let components: Vec<Submap> = edge_components(m, &si)
        .into_iter()
        .map(|faces| extract_submap(m, &faces).expect("nonempty component"))
        .collect();
    let y_length = components.iter().map(|c| c.perimeter()).sum();
    InteriorDecomposition { components, y_length }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContractionError {
    #[error("map has no faces")]
    NoFaces,
    #[error("not a (p,q)-map")]
    NotPq,
    #[error("face {0} has degree below p")]
    SmallFace(FaceId),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub x_length: usize,
    pub y_length: usize,
    pub j: Rational,
    /// `|x| - |y| - (J + p)`; never negative for a valid input.
    pub slack: Rational,
}

/// The boundary of a (p,q)-map with all faces of degree at least p exceeds
/// the total boundary of its interior by at least `J + p`.
pub fn contraction_check(m: &PlanarMap, pq: &PQParams) -> Result<ContractionReport, ContractionError> {
    if m.face_count() == 0 {
        return Err(ContractionError::NoFaces);
    }
    if !is_pq_map(m, pq)?.holds {
        return Err(ContractionError::NotPq);
    }
    if let Some(f) = (0..m.face_count()).find(|&f| Rational::from(m.face_degree(f)) < *pq.p()) {
        return Err(ContractionError::SmallFace(f));
    }
    let j = pq_curvatures(m, pq).j;
    let y_length = interior(m).y_length;
    let x_length = m.perimeter();
    let slack = Rational::from(x_length) - Rational::from(y_length) - (&j + pq.p());
    Ok(ContractionReport { x_length, y_length, j, slack })
}

/// Distance from each vertex to the defect set and its maximum.
pub fn defect_distance(m: &PlanarMap, pq: &PQParams) -> (Vec<usize>, usize) {
    let defects = classify_flat(m, pq).defects;
    let d = m.distances_from(&defects);
    let r = d.iter().copied().max().unwrap_or(0);
    (d, r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthStage {
    pub index: usize,
    pub faces: Vec<FaceId>,
    pub vertex_count: usize,
    /// Darts leaving the stage's vertex set along edges outside the stage.
    pub leaving_darts: usize,
    pub avoids_defects: bool,
    pub flat: bool,
    pub simple: bool,
}

impl GrowthStage {
    pub fn valid(&self) -> bool {
        self.avoids_defects && self.flat && self.simple
    }
}

fn faces_at(m: &PlanarMap, vertices: &BTreeSet<Vertex>) -> Vec<FaceId> {
    let mut out = BTreeSet::new();
    for &v in vertices {
        for &d in m.rotation(v) {
            if let Some(f) = m.face_of(d) {
                out.insert(f);
            }
        }
    }
    out.into_iter().collect()
}

/// Balls grown from `o` by repeatedly adding every face touching the
/// current vertex set; stops after the first stage that is not valid or
/// after `max_stages` stages.
pub fn ball_growth(m: &PlanarMap, pq: &PQParams, o: Vertex, max_stages: usize) -> Vec<GrowthStage> {
    let defects: BTreeSet<Vertex> = classify_flat(m, pq).defects.into_iter().collect();
    let mut stages = Vec::new();
    let mut verts: BTreeSet<Vertex> = [o].into_iter().collect();
    let mut faces: Vec<FaceId> = Vec::new();
    for index in 0..=max_stages {
        if index > 0 {
            faces = faces_at(m, &verts);
            for &f in &faces {
                verts.extend(m.face_vertices(f));
            }
        }
        let edge_set: BTreeSet<usize> =
            faces.iter().flat_map(|&f| m.face_walk(f).iter().map(|&d| edge_of(d))).collect();
        let leaving_darts = verts
            .iter()
            .flat_map(|&v| m.rotation(v).iter())
            .filter(|&&d| !edge_set.contains(&edge_of(d)))
            .count();
        let avoids_defects = verts.iter().all(|v| !defects.contains(v));
        let flat = faces.iter().all(|&f| Rational::from(m.face_degree(f)) == *pq.p());
        let simple = faces.is_empty() || extract_submap(m, &faces).map(|s| s.simple).unwrap_or(false);
        let stage =
            GrowthStage { index, faces: faces.clone(), vertex_count: verts.len(), leaving_darts, avoids_defects, flat, simple };
        let ok = stage.valid();
        stages.push(stage);
        if !ok {
            break;
        }
    }
    stages
}

/// Largest index of a valid grown ball around `o`, or `None` when `o`
/// itself is a defect.
pub fn flat_ball_radius_at(m: &PlanarMap, pq: &PQParams, o: Vertex) -> Option<usize> {
    let stages = ball_growth(m, pq, o, m.vertex_count());
    stages.iter().take_while(|s| s.valid()).last().map(|s| s.index)
}

/// Maximum over all vertices of the grown flat-ball radius; 0 when no
/// vertex qualifies.
pub fn flat_ball_radius(m: &PlanarMap, pq: &PQParams) -> usize {
    let defects: BTreeSet<Vertex> = classify_flat(m, pq).defects.into_iter().collect();
    (0..m.vertex_count())
        .filter(|v| !defects.contains(v))
        .filter_map(|o| flat_ball_radius_at(m, pq, o))
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShellError {
    #[error("radius must be positive")]
    ZeroRadius,
    #[error("vertex {0} does not exist")]
    NoSuchVertex(Vertex),
    #[error("the {0}-ball around the center touches the boundary")]
    BallTouchesBoundary(usize),
    #[error("face {0} has degree above 6")]
    LargeFace(FaceId),
    #[error("could not make the shell simple")]
    NotSimple,
    #[error("shell distance bounds fail: boundary distances {min}..{max} for radius {r}")]
    Bounds { min: usize, max: usize, r: usize },
}

#[derive(Debug, Clone)]
pub struct Shell<'a> {
    pub submap: Submap<'a>,
    pub min_boundary_distance: usize,
    pub max_boundary_distance: usize,
}

/// Non-selected faces not edge-connected (through non-selected faces) to
/// the outer face become selected.
fn fill_holes(m: &PlanarMap, sel: &mut [bool]) {
    let mut reach = vec![false; m.face_count()];
    let mut queue = VecDeque::new();
    for &d in m.outer_orbit() {
        if let Some(f) = m.face_of(twin(d)) {
            if !sel[f] && !reach[f] {
                reach[f] = true;
                queue.push_back(f);
            }
        }
    }
    while let Some(f) = queue.pop_front() {
        for &d in m.face_walk(f) {
            if let Some(g) = m.face_of(twin(d)) {
                if !sel[g] && !reach[g] {
                    reach[g] = true;
                    queue.push_back(g);
                }
            }
        }
    }
    for f in 0..m.face_count() {
        if !reach[f] {
            sel[f] = true;
        }
    }
}

fn selected(sel: &[bool]) -> Vec<FaceId> {
    (0..sel.len()).filter(|&f| sel[f]).collect()
}

/// A simple submap containing every face within distance `r - 1` of `o`,
/// all of whose boundary vertices lie at distance `r .. r + 2` from `o`.
/// Holes are filled, pinches are absorbed, and faces far from `o` are
/// shed greedily while that shortens the boundary.
pub fn shell_submap(m: &PlanarMap, o: Vertex, r: usize) -> Result<Shell<'_>, ShellError> {
    if r == 0 {
        return Err(ShellError::ZeroRadius);
    }
    if o >= m.vertex_count() {
        return Err(ShellError::NoSuchVertex(o));
    }
    if let Some(f) = (0..m.face_count()).find(|&f| m.face_degree(f) > 6) {
        return Err(ShellError::LargeFace(f));
    }
    let dist = m.distances(o);
    let ext = m.exterior_flags();
    if (0..m.vertex_count()).any(|v| ext[v] && dist[v] <= r) {
        return Err(ShellError::BallTouchesBoundary(r));
    }
    let near = |f: FaceId| m.face_vertices(f).iter().map(|&v| dist[v]).min().unwrap_or(usize::MAX);
    let mut sel: Vec<bool> = (0..m.face_count()).map(|f| near(f) < r).collect();
    fill_holes(m, &mut sel);
    let mut guard = 0;
    loop {
        let s = extract_submap(m, &selected(&sel)).map_err(|_| ShellError::NotSimple)?;
        if s.simple {
            break;
        }
        guard += 1;
        if guard > m.face_count() {
            return Err(ShellError::NotSimple);
        }
        // absorb the faces around the first repeated boundary vertex
        let mut seen = BTreeSet::new();
        let pinch = s
            .boundary_walks
            .iter()
            .flatten()
            .map(|&d| m.origin(d))
            .find(|&v| !seen.insert(v))
            .unwrap_or_else(|| m.origin(s.boundary_walks[0][0]));
        for &d in m.rotation(pinch) {
            if let Some(f) = m.face_of(d) {
                sel[f] = true;
            }
        }
        fill_holes(m, &mut sel);
    }
    // greedy shortening
    loop {
        let current = extract_submap(m, &selected(&sel)).expect("nonempty");
        let per = current.perimeter();
        let mut removed = false;
        for f in selected(&sel) {
            if near(f) < r {
                continue;
            }
            let on_boundary = current.boundary_walks.iter().flatten().any(|&d| m.face_of(twin(d)) == Some(f));
            if !on_boundary {
                continue;
            }
            sel[f] = false;
            let trial = extract_submap(m, &selected(&sel)).expect("nonempty");
            if trial.simple && trial.perimeter() < per {
                removed = true;
                break;
            }
            sel[f] = true;
        }
        if !removed {
            break;
        }
    }
    let submap = extract_submap(m, &selected(&sel)).expect("nonempty");
    let bv = submap.boundary_vertices();
    let min = bv.iter().map(|&v| dist[v]).min().unwrap_or(0);
    let max = bv.iter().map(|&v| dist[v]).max().unwrap_or(0);
    if min < r || max > r + 2 {
        return Err(ShellError::Bounds { min, max, r });
    }
    Ok(Shell { submap, min_boundary_distance: min, max_boundary_distance: max })
}
