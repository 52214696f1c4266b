//! Interior decomposition, the contraction inequality and a shell submap.

use std::collections::BTreeSet;

use pqmap::curvature::PQParams;
use pqmap::generators::{gen_standard, square_cells};
use pqmap::submap::{contraction_check, interior, shell_submap};

fn main() {
    let mut cells: BTreeSet<(i64, i64)> = (-3..3).flat_map(|x| (-3..3).map(move |y| (x, y))).collect();
    for c in [(-3, 1), (-2, 1), (1, -2), (2, -2)] {
        cells.remove(&c);
    }
    let m = square_cells(&cells).unwrap();
    let dec = interior(&m);
    for (i, c) in dec.components.iter().enumerate() {
        println!("component {i}: faces {:?}, perimeter {}", c.faces, c.perimeter());
    }
    let pq = PQParams::standard(4, 4).unwrap();
    let rep = contraction_check(&m, &pq).unwrap();
    println!("|x| = {}, |y| = {}, J = {}, slack = {}", rep.x_length, rep.y_length, rep.j, rep.slack);

    let big = gen_standard(4, 5).unwrap();
    let shell = shell_submap(&big, big.deepest_vertex(), 2).unwrap();
    println!(
        "shell of radius 2: {} faces, boundary distances {}..={}",
        shell.submap.faces.len(),
        shell.min_boundary_distance,
        shell.max_boundary_distance
    );
}
