//! Angle functions: Gauss-Bonnet, (delta, b) parameters and the area bound.

use pqmap::angles::{angle_curvatures, assign_regular, dense_bound_check, delta_b_params, Delta};
use pqmap::curvature::PQParams;
use pqmap::generators::{gen_standard, perturb_defects, random_angle_function};
use pqmap::surgery::adjust_to_star;

fn main() {
    let pq = PQParams::standard(4, 4).unwrap();
    let m = perturb_defects(&gen_standard(4, 3).unwrap(), &pq, 2, 5).unwrap();

    let random = random_angle_function(&m, 1);
    println!("random angles: I_f + I_v = {} pi", angle_curvatures(&m, &random).unwrap().total());

    let (outcome, _) = adjust_to_star(&m, &pq);
    let star = outcome.map().unwrap();
    let regular = assign_regular(star);
    let params = delta_b_params(star, &regular).unwrap();
    match &params.delta {
        Delta::Flat => println!("flat, b = {}", params.b),
        Delta::Value(c) => println!("delta = {c} pi, b = {}", params.b),
    }
    let dense = dense_bound_check(star, &regular, None).unwrap();
    println!(
        "special vertices {} (bound > {}), area {} (bound > {}), r = {}",
        dense.special_vertices,
        dense.special_bound.lower.to_f64(),
        dense.area,
        dense.area_bound.lower.to_f64(),
        dense.r
    );
}
