//! Counts for the three standard tilings and how flat balls grow in a grid.

use pqmap::curvature::PQParams;
use pqmap::generators::gen_standard;
use pqmap::submap::{ball_growth, flat_ball_radius};

fn main() {
    for p in [3, 4, 6] {
        let pq = PQParams::standard_for(p).unwrap();
        for n in 1..=3 {
            let m = gen_standard(p, n).unwrap();
            println!(
                "S^{p}_{n}: V={:>3} E={:>3} F={:>3} perimeter={:>3} radius={} flat-ball radius={}",
                m.vertex_count(),
                m.edge_count(),
                m.face_count(),
                m.perimeter(),
                m.radius(),
                flat_ball_radius(&m, &pq)
            );
        }
    }

    let pq = PQParams::standard(4, 4).unwrap();
    let grid = gen_standard(4, 6).unwrap();
    let center = grid.deepest_vertex();
    for s in ball_growth(&grid, &pq, center, 4) {
        println!("stage {}: {} faces, {} darts leave the ball", s.index, s.faces.len(), s.leaving_darts);
    }
}
