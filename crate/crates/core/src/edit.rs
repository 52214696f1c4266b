//! In-place rotation-system editing used by the surgery modules.
//!
//! Dart and vertex ids stay stable while editing (removed items are only
//! marked dead); `finish` compacts and revalidates, returning the id maps.

use crate::map::{twin, Dart, MapError, PlanarMap, Vertex};

#[derive(Debug, Clone)]
pub struct MapEditor {
    rot: Vec<Vec<Dart>>,
    vertex_alive: Vec<bool>,
    origin: Vec<Vertex>,
    dart_alive: Vec<bool>,
    outer: Option<Dart>,
}

#[derive(Debug, Clone)]
pub struct Finished {
    pub map: PlanarMap,
    /// Editor dart id to dart id in `map`.
    pub dart_map: Vec<Option<Dart>>,
    /// Editor vertex id to vertex id in `map`.
    pub vertex_map: Vec<Option<Vertex>>,
}

impl MapEditor {
    pub fn from_map(m: &PlanarMap) -> Self {
        let n = m.dart_count();
        MapEditor {
            rot: m.rotations().to_vec(),
            vertex_alive: vec![true; m.vertex_count()],
            origin: (0..n).map(|d| m.origin(d)).collect(),
            dart_alive: vec![true; n],
            outer: m.outer_dart(),
        }
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn vertex_slots(&self) -> usize {
        self.rot.len()
    }

    pub fn vertex_alive(&self, v: Vertex) -> bool {
        self.vertex_alive[v]
    }

    pub fn is_alive(&self, d: Dart) -> bool {
        self.dart_alive[d]
    }

    pub fn origin(&self, d: Dart) -> Vertex {
        self.origin[d]
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.origin[twin(d)]
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rot[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    pub fn outer(&self) -> Option<Dart> {
        self.outer
    }

    pub fn set_outer(&mut self, d: Option<Dart>) {
        self.outer = d;
    }

    fn pos(&self, d: Dart) -> usize {
        let v = self.origin[d];
        self.rot[v].iter().position(|&x| x == d).expect("dart not in its rotation")
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        let r = &self.rot[self.origin[d]];
        r[(self.pos(d) + 1) % r.len()]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let r = &self.rot[self.origin[d]];
        r[(self.pos(d) + r.len() - 1) % r.len()]
    }

    pub fn phi(&self, d: Dart) -> Dart {
        self.rot_next(twin(d))
    }

    pub fn walk(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.phi(d);
        while x != d {
            out.push(x);
            x = self.phi(x);
        }
        out
    }

    pub fn in_outer_face(&self, d: Dart) -> bool {
        match self.outer {
            Some(o) => self.walk(d).contains(&o),
            None => false,
        }
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.rot.push(Vec::new());
        self.vertex_alive.push(true);
        self.rot.len() - 1
    }

    fn new_edge(&mut self, u: Vertex, v: Vertex) -> Dart {
        let x = self.origin.len();
        self.origin.push(u);
        self.origin.push(v);
        self.dart_alive.push(true);
        self.dart_alive.push(true);
        x
    }

    /// Inserts a new edge whose dart `x` leaves `origin(a)` just before `a`
    /// and whose twin leaves `origin(b)` just before `b`. When `a` and `b`
    /// lie on one face walk this splits that face into `x` followed by the
    /// walk from `b`, and `twin(x)` followed by the walk from `a`.
    pub fn insert_edge(&mut self, a: Dart, b: Dart) -> Dart {
        assert_ne!(a, b, "edge insertion needs two distinct corners");
        let (u, v) = (self.origin[a], self.origin[b]);
        let x = self.new_edge(u, v);
        let pa = self.pos(a);
        self.rot[u].insert(pa, x);
        let pb = self.pos(b);
        self.rot[v].insert(pb, twin(x));
        x
    }

    /// Hangs a new vertex off `origin(a)`, inserted just before `a`.
    pub fn add_pendant(&mut self, a: Dart) -> (Dart, Vertex) {
        let u = self.origin[a];
        let w = self.add_vertex();
        let x = self.new_edge(u, w);
        let pa = self.pos(a);
        self.rot[u].insert(pa, x);
        self.rot[w].push(twin(x));
        (x, w)
    }

    /// Connects a brand new vertex chain of `len` edges from the corner
    /// before `a` to the corner before `b`; returns the chain darts in order.
    pub fn insert_path(&mut self, a: Dart, b: Dart, len: usize) -> Vec<Dart> {
        assert!(len >= 1);
        if len == 1 {
            return vec![self.insert_edge(a, b)];
        }
        let (first, mut w) = self.add_pendant(a);
        let mut darts = vec![first];
        for _ in 1..len - 1 {
            let u = w;
            w = self.add_vertex();
            let x = self.new_edge(u, w);
            self.rot[u].push(x);
            self.rot[w].push(twin(x));
            darts.push(x);
        }
        let u = w;
        let v = self.origin[b];
        let x = self.new_edge(u, v);
        self.rot[u].push(x);
        let pb = self.pos(b);
        self.rot[v].insert(pb, twin(x));
        darts.push(x);
        darts
    }

    fn replace_outer(&mut self, removed: &[Dart]) {
        if let Some(o) = self.outer {
            if removed.contains(&o) {
                self.outer = self.walk(o).into_iter().find(|d| !removed.contains(d));
            }
        }
    }

    /// Deletes an edge. The caller keeps the map connected.
    pub fn remove_edge(&mut self, x: Dart) {
        let y = twin(x);
        self.replace_outer(&[x, y]);
        for d in [x, y] {
            let v = self.origin[d];
            let p = self.pos(d);
            self.rot[v].remove(p);
            self.dart_alive[d] = false;
        }
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        assert!(self.rot[v].is_empty(), "only isolated vertices can be removed");
        self.vertex_alive[v] = false;
    }

    /// Contracts a non-loop edge, merging its head into its origin.
    pub fn contract_edge(&mut self, x: Dart) -> Vertex {
        let y = twin(x);
        let (u, v) = (self.origin[x], self.origin[y]);
        assert_ne!(u, v, "cannot contract a loop");
        self.replace_outer(&[x, y]);
        let px = self.pos(x);
        let py = self.pos(y);
        let mut merged: Vec<Dart> = Vec::new();
        let ru = self.rot[u].clone();
        let rv = self.rot[v].clone();
        for i in 1..ru.len() {
            merged.push(ru[(px + i) % ru.len()]);
        }
        for i in 1..rv.len() {
            merged.push(rv[(py + i) % rv.len()]);
        }
        for &d in &rv {
            self.origin[d] = u;
        }
        self.rot[u] = merged;
        self.rot[v].clear();
        self.vertex_alive[v] = false;
        self.dart_alive[x] = false;
        self.dart_alive[y] = false;
        u
    }

    /// Splits `v`: the new vertex takes `count` consecutive darts starting at
    /// rotation position `start`, plus one end of a new edge to `v`.
    /// Returns `(new_vertex, dart from new vertex to v)`.
    pub fn split_vertex(&mut self, v: Vertex, start: usize, count: usize) -> (Vertex, Dart) {
        let r = self.rot[v].clone();
        let k = r.len();
        assert!(count >= 1 && count < k);
        let w = self.add_vertex();
        let x = self.new_edge(w, v);
        let mut taken: Vec<Dart> = (0..count).map(|i| r[(start + i) % k]).collect();
        let rest: Vec<Dart> = (count..k).map(|i| r[(start + i) % k]).collect();
        for &d in &taken {
            self.origin[d] = w;
        }
        taken.push(x);
        let mut rest_rot = rest;
        rest_rot.push(twin(x));
        self.rot[w] = taken;
        self.rot[v] = rest_rot;
        (w, x)
    }

    /// Slits the map open along the edge of `a`, starting from the outer
    /// corner at `origin(a)` reached first by turning counterclockwise from
    /// `a`. The head of `a` must be an interior vertex. Returns the new
    /// vertex created at `origin(a)` and the new copy of the edge.
    pub fn slit_edge(&mut self, a: Dart) -> Result<(Vertex, Dart), &'static str> {
        let u = self.origin[a];
        let b = twin(a);
        let r = self.rot[u].clone();
        let k = r.len();
        let pa = self.pos(a);
        let outer_keys: Vec<bool> = (0..k).map(|i| self.in_outer_face(r[i])).collect();
        // corner keyed r[i] lies between r[i-1] and r[i]
        let j = (1..k).find(|&j| outer_keys[(pa + j + 1) % k] && (pa + j + 1) % k != pa);
        let j = match j {
            Some(j) if j < k - 1 => j,
            _ => return Err("no outer corner available beside the edge"),
        };
        // u keeps a, r[pa+1..=pa+j]; the new vertex gets r[pa+j+1..] and the copy
        let keep: Vec<Dart> = (0..=j).map(|i| r[(pa + i) % k]).collect();
        let moved: Vec<Dart> = (j + 1..k).map(|i| r[(pa + i) % k]).collect();
        let w = self.add_vertex();
        let v = self.origin[b];
        let a2 = self.new_edge(w, v);
        for &d in &moved {
            self.origin[d] = w;
        }
        let mut wrot = moved;
        wrot.push(a2);
        self.rot[w] = wrot;
        self.rot[u] = keep;
        let pb = self.pos(b);
        self.rot[v].insert(pb + 1, twin(a2));
        Ok((w, a2))
    }

    pub fn finish(self) -> Result<Finished, MapError> {
        let mut dart_map = vec![None; self.origin.len()];
        let mut next = 0;
        for e in 0..self.origin.len() / 2 {
            if self.dart_alive[2 * e] {
                dart_map[2 * e] = Some(next);
                dart_map[2 * e + 1] = Some(next + 1);
                next += 2;
            }
        }
        let mut vertex_map = vec![None; self.rot.len()];
        let mut rotations = Vec::new();
        for (v, r) in self.rot.iter().enumerate() {
            if !self.vertex_alive[v] {
                continue;
            }
            vertex_map[v] = Some(rotations.len());
            rotations.push(r.iter().map(|&d| dart_map[d].expect("dead dart in rotation")).collect::<Vec<_>>());
        }
        let outer = self.outer.and_then(|d| dart_map[d]);
        let map = if next == 0 && rotations.len() == 1 {
            PlanarMap::single_vertex()
        } else {
            PlanarMap::new(rotations, outer)?
        };
        Ok(Finished { map, dart_map, vertex_map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_standard;

    #[test]
    fn diagonal_splits_square() {
        let m = gen_standard(4, 1).unwrap();
        let f = 0;
        let w = m.face_walk(f).to_vec();
        let mut ed = MapEditor::from_map(&m);
        ed.insert_edge(w[0], w[2]);
        let out = ed.finish().unwrap().map;
        assert_eq!(out.face_count(), 5);
        let mut degs: Vec<usize> = (0..5).map(|f| out.face_degree(f)).collect();
        degs.sort();
        assert_eq!(degs, vec![3, 3, 4, 4, 4]);
    }

    #[test]
    fn contraction_keeps_validity() {
        let m = gen_standard(4, 1).unwrap();
        let interior = (0..m.edge_count()).find(|&e| m.interior_edge(e)).unwrap();
        let mut ed = MapEditor::from_map(&m);
        ed.contract_edge(2 * interior);
        let out = ed.finish().unwrap().map;
        assert_eq!(out.vertex_count(), 8);
        assert_eq!(out.face_count(), 4);
        assert_eq!(out.perimeter(), 8);
    }
}
