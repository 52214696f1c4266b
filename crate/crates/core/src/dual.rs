//! Weak dual: a vertex per bounded face, an edge per interior edge.

use crate::map::{edge_of, twin, MapError, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("map has no bounded faces")]
    NoBoundedFaces,
    #[error("weak dual is not a disc map: {0}")]
    NotADisc(String),
}

impl From<MapError> for DualError {
    fn from(e: MapError) -> Self {
        DualError::NotADisc(e.to_string())
    }
}

/// Dual vertex `f` is bounded face `f`; dual edges follow the order of the
/// interior edges of `m`, and dual dart `2j` leaves the face on the right of
/// the matching even dart. Bounded dual faces circle the interior vertices.
pub fn weak_dual(m: &PlanarMap) -> Result<PlanarMap, DualError> {
    if m.face_count() == 0 {
        return Err(DualError::NoBoundedFaces);
    }
    let mut dual_edge = vec![None; m.edge_count()];
    let mut next = 0;
    for (e, slot) in dual_edge.iter_mut().enumerate() {
        if m.interior_edge(e) {
            *slot = Some(next);
            next += 1;
        }
    }
    if next == 0 {
        if m.face_count() == 1 {
            return Ok(PlanarMap::single_vertex());
        }
        return Err(DualError::NotADisc("bounded faces share no edge".into()));
    }
    let dual_dart = |d: usize| dual_edge[edge_of(d)].map(|j| 2 * j + (d & 1));
    let rotations: Vec<Vec<usize>> = m
        .faces()
        .iter()
        .map(|walk| walk.iter().rev().filter_map(|&d| dual_dart(d)).collect())
        .collect();
    let mu = m.multiplicities();
    let mut in_bounded = vec![false; 2 * next];
    let mut interior_count = 0;
    // any outer choice works for tracing orbits
    let probe = PlanarMap::new(rotations.clone(), Some(0))?;
    for v in 0..m.vertex_count() {
        if mu[v] > 0 {
            continue;
        }
        interior_count += 1;
        let start = dual_dart(twin(m.rotation(v)[0])).expect("interior vertex with a boundary edge");
        let mut x = start;
        loop {
            in_bounded[x] = true;
            x = probe.phi(x);
            if x == start {
                break;
            }
        }
    }
    let outer = (0..2 * next).find(|&d| !in_bounded[d]);
    let dual = PlanarMap::new(rotations, outer)?;
    if dual.face_count() != interior_count {
        return Err(DualError::NotADisc("dual faces do not match interior vertices".into()));
    }
    Ok(dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_standard, grid, polygon};

    #[test]
    fn grid_dual() {
        let d = weak_dual(&gen_standard(4, 1).unwrap()).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count(), d.face_count()), (4, 4, 1));
        assert_eq!(d.face_degree(0), 4);
    }

    #[test]
    fn single_face_and_row() {
        let d = weak_dual(&polygon(4)).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (1, 0));
        let d = weak_dual(&grid(2, 1)).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count(), d.face_count()), (2, 1, 0));
    }

    #[test]
    fn no_faces_is_an_error() {
        assert_eq!(weak_dual(&PlanarMap::single_vertex()), Err(DualError::NoBoundedFaces));
    }
}
