//! Rotation-system planar maps.
//!
//! Edge `k` owns darts `2k` and `2k + 1`; the twin of a dart is `d ^ 1`.
//! Each vertex lists its outgoing darts counterclockwise. The face successor
//! is `phi(d) = rot_next(twin(d))`, which keeps the face on the right of every
//! dart: bounded faces are walked clockwise and the outer orbit runs
//! counterclockwise around the map. The boundary path is the reversed outer
//! orbit.

use std::collections::VecDeque;

use serde::Serialize;

pub type Dart = usize;
pub type Vertex = usize;
pub type FaceId = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("map has no vertices")]
    NoVertices,
    #[error("odd number of darts ({0})")]
    OddDartCount(usize),
    #[error("dart {dart} out of range for {edges} edges")]
    DartOutOfRange { dart: Dart, edges: usize },
    #[error("dart {0} appears more than once")]
    DuplicateDart(Dart),
    #[error("dart {0} is missing")]
    MissingDart(Dart),
    #[error("twin involution violated at dart {0}")]
    TwinViolation(Dart),
    #[error("vertex {0} has an empty rotation")]
    IsolatedVertex(Vertex),
    #[error("1-skeleton is disconnected")]
    Disconnected,
    #[error("Euler relation fails: V - E + F = {v} - {e} + {f} != 2")]
    EulerFailure { v: usize, e: usize, f: usize },
    #[error("outer dart {0} out of range")]
    OuterOutOfRange(Dart),
    #[error("no outer dart designated")]
    MissingOuter,
}

/// Unchecked rotation data, as read from a file or produced by an edit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMap {
    pub edges: usize,
    pub rotations: Vec<Vec<Dart>>,
    pub outer: Option<Dart>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && !c.passed)
    }
}

impl RawMap {
    /// All structural errors in a fixed order: twin, partition, connectivity,
    /// Euler, outer designation. Later checks are skipped once an earlier one
    /// makes them meaningless.
    pub fn errors(&self) -> Vec<MapError> {
        let mut errs = Vec::new();
        if self.rotations.is_empty() {
            errs.push(MapError::NoVertices);
            return errs;
        }
        let n_darts = 2 * self.edges;
        let mut seen = vec![0u32; n_darts];
        for rot in &self.rotations {
            for &d in rot {
                if d >= n_darts {
                    errs.push(MapError::DartOutOfRange { dart: d, edges: self.edges });
                } else {
                    seen[d] += 1;
                    if seen[d] == 2 {
                        errs.push(MapError::DuplicateDart(d));
                    }
                }
            }
        }
        let mut twin_errs = Vec::new();
        let mut missing = Vec::new();
        for d in 0..n_darts {
            if seen[d] == 0 {
                if seen[twin(d)] > 0 {
                    twin_errs.push(MapError::TwinViolation(twin(d)));
                } else {
                    missing.push(MapError::MissingDart(d));
                }
            }
        }
        errs.extend(twin_errs);
        errs.extend(missing);
        if self.edges > 0 || self.rotations.len() > 1 {
            for (v, rot) in self.rotations.iter().enumerate() {
                if rot.is_empty() {
                    errs.push(MapError::IsolatedVertex(v));
                }
            }
        }
        match self.outer {
            Some(d) if d >= n_darts => errs.push(MapError::OuterOutOfRange(d)),
            None if self.edges > 0 => errs.push(MapError::MissingOuter),
            _ => {}
        }
        if !errs.is_empty() {
            return errs;
        }
        let origin = origins(&self.rotations, n_darts);
        if !connected(&self.rotations, &origin) {
            errs.push(MapError::Disconnected);
            return errs;
        }
        let pos = positions(&self.rotations, n_darts);
        let orbits = orbit_count(&self.rotations, &origin, &pos, n_darts);
        let (v, e, f) = (self.rotations.len(), self.edges, orbits);
        if v + f != e + 2 {
            errs.push(MapError::EulerFailure { v, e, f });
        }
        errs
    }

    pub fn validate(&self) -> ValidationReport {
        let errs = self.errors();
        let group = |name: &'static str, pred: &dyn Fn(&MapError) -> bool| {
            let hits: Vec<String> = errs.iter().filter(|e| pred(e)).map(|e| e.to_string()).collect();
            CheckResult { name, passed: hits.is_empty(), detail: if hits.is_empty() { "ok".into() } else { hits.join("; ") } }
        };
        let checks = vec![
            group("twin_involution", &|e| {
                matches!(e, MapError::TwinViolation(_) | MapError::OddDartCount(_) | MapError::DartOutOfRange { .. })
            }),
            group("rotation_partition", &|e| {
                matches!(
                    e,
                    MapError::DuplicateDart(_) | MapError::MissingDart(_) | MapError::IsolatedVertex(_) | MapError::NoVertices
                )
            }),
            group("connectivity", &|e| matches!(e, MapError::Disconnected)),
            group("euler", &|e| matches!(e, MapError::EulerFailure { .. })),
            group("outer_designation", &|e| matches!(e, MapError::OuterOutOfRange(_) | MapError::MissingOuter)),
        ];
        ValidationReport { checks }
    }
}

fn origins(rotations: &[Vec<Dart>], n_darts: usize) -> Vec<Vertex> {
    let mut origin = vec![0; n_darts];
    for (v, rot) in rotations.iter().enumerate() {
        for &d in rot {
            origin[d] = v;
        }
    }
    origin
}

fn positions(rotations: &[Vec<Dart>], n_darts: usize) -> Vec<usize> {
    let mut pos = vec![0; n_darts];
    for rot in rotations {
        for (i, &d) in rot.iter().enumerate() {
            pos[d] = i;
        }
    }
    pos
}

fn connected(rotations: &[Vec<Dart>], origin: &[Vertex]) -> bool {
    let mut seen = vec![false; rotations.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &d in &rotations[v] {
            let w = origin[twin(d)];
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == rotations.len()
}

fn orbit_count(rotations: &[Vec<Dart>], origin: &[Vertex], pos: &[usize], n_darts: usize) -> usize {
    let mut seen = vec![false; n_darts];
    let mut count = if n_darts == 0 { 1 } else { 0 };
    for start in 0..n_darts {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let t = twin(d);
            let rot = &rotations[origin[t]];
            d = rot[(pos[t] + 1) % rot.len()];
        }
    }
    count
}

/// A validated, immutable planar map with cached face structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    rotations: Vec<Vec<Dart>>,
    outer: Option<Dart>,
    origin: Vec<Vertex>,
    rot_pos: Vec<usize>,
    face_of: Vec<Option<FaceId>>,
    faces: Vec<Vec<Dart>>,
    outer_walk: Vec<Dart>,
}

impl PlanarMap {
    /// Validates and builds. Each rotation is rotated to start at its
    /// minimal dart; bounded faces are numbered by their minimal dart.
    pub fn new(rotations: Vec<Vec<Dart>>, outer: Option<Dart>) -> Result<Self, MapError> {
        let total: usize = rotations.iter().map(|r| r.len()).sum();
        if total % 2 == 1 {
            return Err(MapError::OddDartCount(total));
        }
        let raw = RawMap { edges: total / 2, rotations, outer };
        Self::from_raw(raw)
    }

    pub fn from_raw(raw: RawMap) -> Result<Self, MapError> {
        if let Some(e) = raw.errors().into_iter().next() {
            return Err(e);
        }
        Ok(Self::build(raw.rotations, raw.outer))
    }

    pub fn single_vertex() -> Self {
        Self::build(vec![Vec::new()], None)
    }

    fn build(mut rotations: Vec<Vec<Dart>>, outer: Option<Dart>) -> Self {
        for rot in rotations.iter_mut() {
            if let Some((i, _)) = rot.iter().enumerate().min_by_key(|(_, &d)| d) {
                rot.rotate_left(i);
            }
        }
        let n_darts: usize = rotations.iter().map(|r| r.len()).sum();
        let origin = origins(&rotations, n_darts);
        let rot_pos = positions(&rotations, n_darts);
        let mut m = PlanarMap {
            rotations,
            outer,
            origin,
            rot_pos,
            face_of: vec![None; n_darts],
            faces: Vec::new(),
            outer_walk: Vec::new(),
        };
        let mut seen = vec![false; n_darts];
        let mut orbits: Vec<Vec<Dart>> = Vec::new();
        for start in 0..n_darts {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = m.phi(d);
            }
            orbits.push(walk);
        }
        for walk in orbits {
            if Some(walk[0]) == outer.map(|o| m.orbit_min(o)) {
                m.outer_walk = walk;
            } else {
                let id = m.faces.len();
                for &d in &walk {
                    m.face_of[d] = Some(id);
                }
                m.faces.push(walk);
            }
        }
        m
    }

    fn orbit_min(&self, d: Dart) -> Dart {
        let mut best = d;
        let mut x = self.phi(d);
        while x != d {
            best = best.min(x);
            x = self.phi(x);
        }
        best
    }

    pub fn to_raw(&self) -> RawMap {
        RawMap { edges: self.edge_count(), rotations: self.rotations.clone(), outer: self.outer }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    /// Number of bounded faces.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn area(&self) -> usize {
        self.faces.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    pub fn origin(&self, d: Dart) -> Vertex {
        self.origin[d]
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.origin[twin(d)]
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.origin[d]];
        rot[(self.rot_pos[d] + 1) % rot.len()]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.origin[d]];
        rot[(self.rot_pos[d] + rot.len() - 1) % rot.len()]
    }

    pub fn phi(&self, d: Dart) -> Dart {
        self.rot_next(twin(d))
    }

    pub fn phi_inv(&self, d: Dart) -> Dart {
        twin(self.rot_prev(d))
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    /// Bounded face containing `d`, or `None` when `d` is on the outer orbit.
    pub fn face_of(&self, d: Dart) -> Option<FaceId> {
        self.face_of[d]
    }

    pub fn is_outer_dart(&self, d: Dart) -> bool {
        self.face_of[d].is_none()
    }

    pub fn face_walk(&self, f: FaceId) -> &[Dart] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn outer_orbit(&self) -> &[Dart] {
        &self.outer_walk
    }

    pub fn face_degree(&self, f: FaceId) -> usize {
        self.faces[f].len()
    }

    pub fn face_vertices(&self, f: FaceId) -> Vec<Vertex> {
        self.faces[f].iter().map(|&d| self.origin[d]).collect()
    }

    pub fn vertex_degree(&self, v: Vertex) -> usize {
        self.rotations[v].len()
    }

    pub fn max_vertex_degree(&self) -> usize {
        self.rotations.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn max_face_degree(&self) -> usize {
        self.faces.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// Reversed outer orbit: a closed walk with the map on its right.
    pub fn boundary_path(&self) -> Vec<Dart> {
        self.outer_walk.iter().rev().map(|&d| twin(d)).collect()
    }

    pub fn perimeter(&self) -> usize {
        self.outer_walk.len()
    }

    /// Number of passages of the boundary path through each vertex.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mu = vec![0; self.vertex_count()];
        for &d in &self.outer_walk {
            mu[self.origin[d]] += 1;
        }
        if self.edge_count() == 0 {
            mu[0] = 1;
        }
        mu
    }

    pub fn exterior_flags(&self) -> Vec<bool> {
        self.multiplicities().iter().map(|&m| m > 0).collect()
    }

    pub fn exterior_vertices(&self) -> Vec<Vertex> {
        let mut flags = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for v in self.boundary_vertex_sequence() {
            if !flags[v] {
                flags[v] = true;
                out.push(v);
            }
        }
        if self.edge_count() == 0 {
            out.push(0);
        }
        out
    }

    /// Vertices of the boundary path in order, with repetitions.
    pub fn boundary_vertex_sequence(&self) -> Vec<Vertex> {
        self.boundary_path().iter().map(|&d| self.origin[d]).collect()
    }

    pub fn is_boundary_simple(&self) -> bool {
        let seq = self.boundary_vertex_sequence();
        let mut seen = vec![false; self.vertex_count()];
        for v in seq {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn interior_edge(&self, e: usize) -> bool {
        self.face_of[2 * e].is_some() && self.face_of[2 * e + 1].is_some()
    }

    pub fn interior_edge_count(&self) -> usize {
        (0..self.edge_count()).filter(|&e| self.interior_edge(e)).count()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rotations[v].iter().map(move |&d| self.head(d))
    }

    /// Breadth-first distances from a set of sources; `usize::MAX` marks
    /// unreachable vertices (never the case in a valid map).
    pub fn distances_from(&self, sources: &[Vertex]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances(&self, o: Vertex) -> Vec<usize> {
        self.distances_from(&[o])
    }

    /// Maximal distance from a vertex to the exterior vertex set.
    pub fn radius(&self) -> usize {
        let d = self.distances_from(&self.exterior_vertices());
        d.into_iter().max().unwrap_or(0)
    }

    pub fn ball(&self, o: Vertex, radius: usize) -> Vec<Vertex> {
        let d = self.distances(o);
        (0..self.vertex_count()).filter(|&v| d[v] <= radius).collect()
    }

    /// A vertex farthest from the boundary, smallest id on ties.
    pub fn deepest_vertex(&self) -> Vertex {
        let d = self.distances_from(&self.exterior_vertices());
        let best = d.iter().copied().max().unwrap_or(0);
        d.iter().position(|&x| x == best).unwrap_or(0)
    }

    /// Position of a dart inside its bounded face walk.
    pub fn walk_index(&self, d: Dart) -> Option<usize> {
        let f = self.face_of[d]?;
        self.faces[f].iter().position(|&x| x == d)
    }

    pub fn degrees_and_boundary(&self) -> DegreeSummary {
        DegreeSummary {
            vertex_degrees: (0..self.vertex_count()).map(|v| self.vertex_degree(v)).collect(),
            face_degrees: (0..self.face_count()).map(|f| self.face_degree(f)).collect(),
            boundary: self.boundary_path(),
            multiplicities: self.multiplicities(),
        }
    }

    pub fn validation_report(&self) -> ValidationReport {
        self.to_raw().validate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub vertex_degrees: Vec<usize>,
    pub face_degrees: Vec<usize>,
    pub boundary: Vec<Dart>,
    pub multiplicities: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Square with vertices 0..4 counterclockwise; edge k joins k and k+1.
    pub(crate) fn square() -> PlanarMap {
        // dart 2k: k -> k+1, dart 2k+1: k+1 -> k
        let rotations = vec![vec![0, 7], vec![2, 1], vec![4, 3], vec![6, 5]];
        PlanarMap::new(rotations, Some(0)).unwrap()
    }

    #[test]
    fn square_counts() {
        let m = square();
        assert_eq!(m.vertex_count(), 4);
        assert_eq!(m.edge_count(), 4);
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.perimeter(), 4);
        assert_eq!(m.face_degree(0), 4);
        assert_eq!(m.multiplicities(), vec![1, 1, 1, 1]);
        assert!(m.is_boundary_simple());
        assert_eq!(m.radius(), 0);
    }

    #[test]
    fn genus_one_rotation_fails_euler() {
        // one vertex, two loops interleaved: a single face orbit
        let raw = RawMap { edges: 2, rotations: vec![vec![0, 2, 1, 3]], outer: Some(0) };
        let errs = raw.errors();
        assert_eq!(errs, vec![MapError::EulerFailure { v: 1, e: 2, f: 1 }]);
        assert!(raw.validate().failed("euler"));
    }

    #[test]
    fn loop_with_disc_face() {
        let m = PlanarMap::new(vec![vec![0, 1]], Some(1)).unwrap();
        assert_eq!(m.vertex_degree(0), 2);
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.face_degree(0), 1);
        assert_eq!(m.multiplicities(), vec![1]);
    }

    #[test]
    fn disconnected_is_reported() {
        let raw = RawMap { edges: 2, rotations: vec![vec![0], vec![1], vec![2], vec![3]], outer: Some(0) };
        assert_eq!(raw.errors(), vec![MapError::Disconnected]);
    }

    #[test]
    fn missing_twin_is_twin_violation() {
        let raw = RawMap { edges: 2, rotations: vec![vec![0, 1], vec![2]], outer: Some(0) };
        assert_eq!(raw.errors()[0], MapError::TwinViolation(2));
    }
}
