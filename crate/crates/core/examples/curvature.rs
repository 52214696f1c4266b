//! Combinatorial curvature of a random (4,4)-map and a relaxed parameter pair.

use pqmap::curvature::{classify_flat, is_pq_map, pq_curvatures, PQParams};
use pqmap::exact::Rational;
use pqmap::generators::gen_random_pq;

fn main() {
    let pq = PQParams::standard(4, 4).unwrap();
    let m = gen_random_pq(&pq, 25, 7);
    let rep = pq_curvatures(&m, &pq);
    println!("faces={} vertices={}", m.face_count(), m.vertex_count());
    println!("I_f = {}, I_v = {} (interior {}, boundary {}), sum = {}", rep.i_f, rep.i_v, rep.i_v_interior, rep.i_v_boundary, &rep.i_f + &rep.i_v);
    println!("(4,4)-map: {:?}", is_pq_map(&m, &pq).unwrap());
    let flat = classify_flat(&m, &pq);
    println!("non-flat faces {:?}, non-flat interior vertices {:?}", flat.non_flat_faces, flat.non_flat_interior_vertices);

    // the identity holds for any p > 2 with q = 2p / (p - 2)
    let relaxed = PQParams::relaxed_for(Rational::new(9, 2)).unwrap();
    let rep = pq_curvatures(&m, &relaxed);
    println!("p = {}, q = {}: I_f + I_v = {}", relaxed.p(), relaxed.q(), &rep.i_f + &rep.i_v);
}
