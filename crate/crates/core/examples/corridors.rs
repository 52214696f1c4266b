//! Corridors in (4,4)-maps: build, collapse, reduce a pentagon, and
//! split a large face without changing distances to a vertex.

use pqmap::corridor::{
    build_corridor, collapse_corridor, distance_preserving_subdivision, reduce_face_degree, ContinuationRule,
};
use pqmap::generators::{attach_boundary_face, gen_standard, polygon};

fn main() {
    let m = gen_standard(4, 2).unwrap();
    let e = (0..m.edge_count()).find(|&e| m.interior_edge(e)).unwrap();
    let c = build_corridor(&m, e, ContinuationRule::Antipodal).unwrap();
    println!("corridor from edge {e}: {} faces, sides {} and {}", c.len(), c.left_length(), c.right_length());
    let done = collapse_corridor(&m, &c).unwrap();
    println!("collapsed: V {} -> {}, F {} -> {}", m.vertex_count(), done.map.vertex_count(), m.face_count(), done.map.face_count());

    let with_pentagon = attach_boundary_face(&m, 0, 1, 5).unwrap();
    for e in 0..with_pentagon.edge_count() {
        let Ok(c) = build_corridor(&with_pentagon, e, ContinuationRule::Antipodal) else { continue };
        let Some(t) = c.faces.iter().position(|&f| with_pentagon.face_degree(f) == 5) else { continue };
        let reduced = reduce_face_degree(&with_pentagon, &c, t + 1).unwrap();
        println!("edge {e}: largest face degree {} -> {}", with_pentagon.max_face_degree(), reduced.max_face_degree());
        break;
    }

    let nine = polygon(9);
    let (split, moves) = distance_preserving_subdivision(&nine, 0);
    println!("9-gon: {} diagonals, largest face now {}", moves.len(), split.max_face_degree());
    println!("distances from 0: {:?} -> {:?}", nine.distances(0), split.distances(0));
}
