//! Adjusting a perturbed map to a (p,q)*-map, then cutting it open along a
//! connecting forest.

use pqmap::curvature::PQParams;
use pqmap::generators::{gen_standard, perturb_defects};
use pqmap::surgery::{adjust_to_star, connecting_forest, cut_along_forest, interior_is_flat};

fn main() {
    let pq = PQParams::standard(4, 4).unwrap();
    let m = perturb_defects(&gen_standard(4, 3).unwrap(), &pq, 2, 11).unwrap();
    let (outcome, report) = adjust_to_star(&m, &pq);
    println!("{report:?}");
    let star = outcome.map().expect("grid survives trimming");

    let forest = connecting_forest(star, &pq).unwrap();
    println!("forest: {} edges in {} trees", forest.d, forest.trees.len());
    let cut = cut_along_forest(star, &forest).unwrap();
    println!(
        "perimeter {} + 2*{} = {}; interior flat: {}",
        cut.perimeter_before,
        cut.d,
        cut.map.perimeter(),
        interior_is_flat(&cut.map, &pq)
    );
}
