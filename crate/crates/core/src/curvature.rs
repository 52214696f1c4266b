//! Combinatorial (p,q)-curvature of faces and vertices.
//!
//! A face of degree `d` has curvature `p - d`; a vertex of degree `d` and
//! boundary multiplicity `mu` has curvature `(p/q)(q - d) - mu`. Summed over
//! the map the two always total `p`.

use serde::Serialize;

use crate::exact::Rational;
use crate::map::{FaceId, PlanarMap, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurvatureError {
    #[error("(p,q) = ({0},{1}) does not satisfy 1/p + 1/q = 1/2")]
    NotEuclidean(String, String),
    #[error("standard mode needs (p,q) in {{(3,6),(4,4),(6,3)}}, got ({0},{1})")]
    NotStandard(usize, usize),
    #[error("vertex {0} has degree 1")]
    DegreeOneVertex(Vertex),
}

/// The pair (p,q), with 1/p + 1/q = 1/2. Integer pairs are the standard
/// tessellation types; rational pairs are accepted for curvature sums only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PQParams {
    p: Rational,
    q: Rational,
    ints: Option<(usize, usize)>,
}

impl PQParams {
    pub fn standard(p: usize, q: usize) -> Result<Self, CurvatureError> {
        match (p, q) {
            (3, 6) | (4, 4) | (6, 3) => Ok(PQParams {
                p: Rational::from(p),
                q: Rational::from(q),
                ints: Some((p, q)),
            }),
            _ => Err(CurvatureError::NotStandard(p, q)),
        }
    }

    /// The partner of `p` is forced: q = 2p / (p - 2).
    pub fn standard_for(p: usize) -> Result<Self, CurvatureError> {
        match p {
            3 => Self::standard(3, 6),
            4 => Self::standard(4, 4),
            6 => Self::standard(6, 3),
            _ => Err(CurvatureError::NotStandard(p, 0)),
        }
    }

    pub fn relaxed(p: Rational, q: Rational) -> Result<Self, CurvatureError> {
        let bad = || CurvatureError::NotEuclidean(p.to_string(), q.to_string());
        if !p.is_positive() || !q.is_positive() {
            return Err(bad());
        }
        if p.recip() + q.recip() != Rational::new(1, 2) {
            return Err(bad());
        }
        let ints = if p.is_integer() && q.is_integer() {
            let (pi, qi) = (p.numer_string().parse().ok(), q.numer_string().parse().ok());
            match (pi, qi) {
                (Some(pi), Some(qi)) => Some((pi, qi)),
                _ => None,
            }
        } else {
            None
        };
        Ok(PQParams { p, q, ints })
    }

    /// Relaxed pair determined by `p` alone.
    pub fn relaxed_for(p: Rational) -> Result<Self, CurvatureError> {
        let two = Rational::from_int(2);
        if p <= two {
            return Err(CurvatureError::NotEuclidean(p.to_string(), "-".into()));
        }
        let q = &(&two * &p) / &(&p - &two);
        Self::relaxed(p, q)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Integer `p`; panics for a relaxed rational pair.
    pub fn pi(&self) -> usize {
        self.ints.expect("integer (p,q) required").0
    }

    pub fn qi(&self) -> usize {
        self.ints.expect("integer (p,q) required").1
    }

    pub fn is_integral(&self) -> bool {
        self.ints.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvatureReport {
    pub p: Rational,
    pub q: Rational,
    pub face_curvatures: Vec<Rational>,
    pub vertex_curvatures: Vec<Rational>,
    pub i_f: Rational,
    pub i_v: Rational,
    pub i_v_interior: Rational,
    pub i_v_boundary: Rational,
    /// `-I_f - 2 I_v^i`.
    pub j: Rational,
}

pub fn face_curvature(m: &PlanarMap, f: FaceId, pq: &PQParams) -> Rational {
    pq.p() - Rational::from(m.face_degree(f))
}

pub fn vertex_curvature(m: &PlanarMap, v: Vertex, mu: usize, pq: &PQParams) -> Rational {
    let ratio = pq.p() / pq.q();
    &ratio * (pq.q() - Rational::from(m.vertex_degree(v))) - Rational::from(mu)
}

/// Per-element and total curvatures. Panics if the totals do not add up
/// to `p`, which would mean the face structure itself is broken.
pub fn pq_curvatures(m: &PlanarMap, pq: &PQParams) -> CurvatureReport {
    let mu = m.multiplicities();
    let face_curvatures: Vec<Rational> = (0..m.face_count()).map(|f| face_curvature(m, f, pq)).collect();
    let vertex_curvatures: Vec<Rational> =
        (0..m.vertex_count()).map(|v| vertex_curvature(m, v, mu[v], pq)).collect();
    let i_f: Rational = face_curvatures.iter().sum();
    let mut i_v_interior = Rational::zero();
    let mut i_v_boundary = Rational::zero();
    for (v, c) in vertex_curvatures.iter().enumerate() {
        if mu[v] > 0 {
            i_v_boundary = i_v_boundary + c;
        } else {
            i_v_interior = i_v_interior + c;
        }
    }
    let i_v = &i_v_interior + &i_v_boundary;
    assert_eq!(&i_v + &i_f, *pq.p(), "curvature total differs from p");
    let j = -&i_f - &i_v_interior * 2;
    CurvatureReport {
        p: pq.p().clone(),
        q: pq.q().clone(),
        face_curvatures,
        vertex_curvatures,
        i_f,
        i_v,
        i_v_interior,
        i_v_boundary,
        j,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum Element {
    Face(FaceId),
    Vertex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PqVerdict {
    pub holds: bool,
    pub witness: Option<Element>,
}

/// A face is exterior when it shares an edge with the boundary.
pub fn exterior_faces(m: &PlanarMap) -> Vec<bool> {
    let mut ext = vec![false; m.face_count()];
    for &d in m.outer_orbit() {
        if let Some(f) = m.face_of(crate::map::twin(d)) {
            ext[f] = true;
        }
    }
    ext
}

/// Interior faces have degree at least p and interior vertices degree at
/// least q. The witness is the first violation, faces before vertices.
pub fn is_pq_map(m: &PlanarMap, pq: &PQParams) -> Result<PqVerdict, CurvatureError> {
    if let Some(v) = (0..m.vertex_count()).find(|&v| m.vertex_degree(v) == 1) {
        return Err(CurvatureError::DegreeOneVertex(v));
    }
    let ext_f = exterior_faces(m);
    let ext_v = m.exterior_flags();
    for f in 0..m.face_count() {
        if !ext_f[f] && Rational::from(m.face_degree(f)) < *pq.p() {
            return Ok(PqVerdict { holds: false, witness: Some(Element::Face(f)) });
        }
    }
    for v in 0..m.vertex_count() {
        if !ext_v[v] && Rational::from(m.vertex_degree(v)) < *pq.q() {
            return Ok(PqVerdict { holds: false, witness: Some(Element::Vertex(v)) });
        }
    }
    Ok(PqVerdict { holds: true, witness: None })
}

/// Condition (B): every face degree below 2p and every vertex degree below 2q.
pub fn satisfies_b(m: &PlanarMap, pq: &PQParams) -> bool {
    let (p, q) = (pq.pi(), pq.qi());
    m.max_face_degree() < 2 * p && m.max_vertex_degree() < 2 * q
}

/// Condition (D): every bounded face, exterior or not, has degree at least p.
pub fn satisfies_d(m: &PlanarMap, pq: &PQParams) -> bool {
    (0..m.face_count()).all(|f| m.face_degree(f) >= pq.pi())
}

/// A (p,q)-map satisfying both (B) and (D).
pub fn is_pq_star(m: &PlanarMap, pq: &PQParams) -> bool {
    matches!(is_pq_map(m, pq), Ok(PqVerdict { holds: true, .. })) && satisfies_b(m, pq) && satisfies_d(m, pq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatClassification {
    pub flat_faces: Vec<FaceId>,
    pub flat_interior_vertices: Vec<Vertex>,
    pub non_flat_faces: Vec<FaceId>,
    pub non_flat_interior_vertices: Vec<Vertex>,
    /// Exterior vertices, non-flat interior vertices and every vertex of a
    /// non-flat face, ascending.
    pub defects: Vec<Vertex>,
}

pub fn classify_flat(m: &PlanarMap, pq: &PQParams) -> FlatClassification {
    let ext = m.exterior_flags();
    let p = pq.p();
    let q = pq.q();
    let mut is_defect = ext.clone();
    let mut flat_faces = Vec::new();
    let mut non_flat_faces = Vec::new();
    for f in 0..m.face_count() {
        if Rational::from(m.face_degree(f)) == *p {
            flat_faces.push(f);
        } else {
            non_flat_faces.push(f);
            for v in m.face_vertices(f) {
                is_defect[v] = true;
            }
        }
    }
    let mut flat_interior_vertices = Vec::new();
    let mut non_flat_interior_vertices = Vec::new();
    for v in 0..m.vertex_count() {
        if ext[v] {
            continue;
        }
        if Rational::from(m.vertex_degree(v)) == *q {
            flat_interior_vertices.push(v);
        } else {
            non_flat_interior_vertices.push(v);
            is_defect[v] = true;
        }
    }
    let defects = (0..m.vertex_count()).filter(|&v| is_defect[v]).collect();
    FlatClassification { flat_faces, flat_interior_vertices, non_flat_faces, non_flat_interior_vertices, defects }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_standard, polygon};

    #[test]
    fn single_square_curvatures() {
        let m = polygon(4);
        let pq = PQParams::standard(4, 4).unwrap();
        let r = pq_curvatures(&m, &pq);
        assert_eq!(r.face_curvatures, vec![Rational::zero()]);
        assert!(r.vertex_curvatures.iter().all(|c| *c == 1));
        assert_eq!(r.i_v, 4);
        assert_eq!(r.i_f, 0);
    }

    #[test]
    fn hexagon_and_triangle_star() {
        let pq63 = PQParams::standard(6, 3).unwrap();
        let r = pq_curvatures(&polygon(6), &pq63);
        assert_eq!(r.i_f, 0);
        assert_eq!(r.i_v, 6);
        let pq36 = PQParams::standard(3, 6).unwrap();
        let m = gen_standard(3, 1).unwrap();
        let r = pq_curvatures(&m, &pq36);
        assert_eq!(r.i_f, 0);
        assert_eq!(r.i_v, 3);
        let halves = r.vertex_curvatures.iter().filter(|c| **c == Rational::new(1, 2)).count();
        assert_eq!(halves, 6);
        assert_eq!(r.vertex_curvatures.iter().filter(|c| c.is_zero()).count(), 1);
    }

    #[test]
    fn relaxed_pairs_are_checked() {
        assert!(PQParams::relaxed(Rational::new(5, 1), Rational::new(10, 3)).is_ok());
        assert!(PQParams::relaxed(Rational::new(5, 1), Rational::new(3, 1)).is_err());
        assert!(PQParams::standard(5, 5).is_err());
        let pq = PQParams::relaxed_for(Rational::new(7, 2)).unwrap();
        assert_eq!(*pq.q(), Rational::new(14, 3));
    }

    #[test]
    fn grids_are_flat_pq_maps() {
        let pq = PQParams::standard(4, 4).unwrap();
        for n in 1..4 {
            let m = gen_standard(4, n).unwrap();
            assert!(is_pq_map(&m, &pq).unwrap().holds);
            let c = classify_flat(&m, &pq);
            assert!(c.non_flat_faces.is_empty() && c.non_flat_interior_vertices.is_empty());
            assert_eq!(c.defects, m.exterior_vertices().into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        }
        assert!(is_pq_map(&polygon(4), &pq).unwrap().holds);
    }

    #[test]
    fn split_interior_vertex_is_a_witness() {
        let pq = PQParams::standard(4, 4).unwrap();
        let m = gen_standard(4, 2).unwrap();
        let center = m.deepest_vertex();
        // split the center into degrees 3 and 3 (2 + 2 old darts, plus the new edge)
        let mut ed = crate::edit::MapEditor::from_map(&m);
        let (w, _) = ed.split_vertex(center, 0, 2);
        let fin = ed.finish().unwrap();
        let v = fin.vertex_map[center].unwrap();
        let verdict = is_pq_map(&fin.map, &pq).unwrap();
        assert!(!verdict.holds);
        let wit = verdict.witness.unwrap();
        assert!(wit == Element::Vertex(v) || wit == Element::Vertex(fin.vertex_map[w].unwrap()));
    }

    #[test]
    fn degree_one_is_an_error() {
        let m = PlanarMap::new(vec![vec![0], vec![1]], Some(0)).unwrap();
        let pq = PQParams::standard(4, 4).unwrap();
        assert_eq!(is_pq_map(&m, &pq), Err(CurvatureError::DegreeOneVertex(0)));
    }
}
