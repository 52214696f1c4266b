use std::collections::BTreeSet;

use proptest::prelude::*;

use pqmap::angles::angle_curvatures;
use pqmap::corridor::{build_corridor, corridor_excess, distance_preserving_subdivision, reduce_face_degree, ContinuationRule};
use pqmap::curvature::{is_pq_star, pq_curvatures, PQParams};
use pqmap::dual::weak_dual;
use pqmap::exact::Rational;
use pqmap::format::{parse, serialize, serialize_with_angles};
use pqmap::generators::{attach_boundary_face, gen_standard, random_angle_function, square_cells, GenSpec};
use pqmap::map::PlanarMap;
use pqmap::submap::interior;
use pqmap::surgery::{adjust_to_star, TrimOutcome};

fn pair() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((3, 6)), Just((4, 4)), Just((6, 3))]
}

/// A generated map together with the parameters it was generated for.
fn pq_map() -> impl Strategy<Value = (PlanarMap, PQParams)> {
    (pair(), any::<bool>(), 0usize..50, any::<u64>()).prop_filter_map("generator rejected", |((p, q), perturb, i, seed)| {
        let spec = if perturb { format!("perturb:{p},{q}") } else { format!("random:{p},{q}") };
        let m = spec.parse::<GenSpec>().unwrap().generate(i, seed).ok()?;
        Some((m, PQParams::standard(p, q).unwrap()))
    })
}

fn any_map() -> impl Strategy<Value = PlanarMap> {
    pq_map().prop_map(|(m, _)| m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_is_one(m in any_map()) {
        let chi = m.vertex_count() as i64 - m.edge_count() as i64 + m.face_count() as i64;
        prop_assert_eq!(chi, 1);
        prop_assert!(m.validation_report().passed());
    }

    #[test]
    fn text_format_round_trips(m in any_map(), seed in any::<u64>()) {
        let back = parse(&serialize(&m)).unwrap();
        prop_assert_eq!(&back.map, &m);
        if m.edge_count() > 0 {
            let a = random_angle_function(&m, seed);
            let back = parse(&serialize_with_angles(&m, &a.corners)).unwrap();
            prop_assert_eq!(back.angles, a.corners);
        }
    }

    #[test]
    fn curvature_sums_to_p(m in any_map(), (p, q) in pair()) {
        let pq = PQParams::standard(p, q).unwrap();
        let rep = pq_curvatures(&m, &pq);
        prop_assert_eq!(&rep.i_f + &rep.i_v, Rational::from(p));
    }

    #[test]
    fn angle_curvature_sums_to_two(m in any_map(), seed in any::<u64>()) {
        prop_assume!(m.edge_count() > 0);
        let rep = angle_curvatures(&m, &random_angle_function(&m, seed)).unwrap();
        prop_assert_eq!(rep.total(), Rational::from_int(2));
    }

    #[test]
    fn weak_dual_counts(m in any_map()) {
        prop_assume!(m.face_count() > 0);
        if let Ok(d) = weak_dual(&m) {
            prop_assert_eq!(d.vertex_count(), m.face_count());
            prop_assert_eq!(d.edge_count(), m.interior_edge_count());
        }
    }

    #[test]
    fn adjustment_reaches_star_maps((m, pq) in pq_map()) {
        match adjust_to_star(&m, &pq).0 {
            TrimOutcome::Trimmed { map, .. } => prop_assert!(is_pq_star(&map, &pq)),
            TrimOutcome::Emptied { removed } => prop_assert!(removed > 0),
        }
    }

    #[test]
    fn subdivision_keeps_distances_to_center(extra in 7usize..12, start in 0usize..8, center in 0usize..25) {
        let m = attach_boundary_face(&gen_standard(4, 2).unwrap(), start, 1, extra).unwrap();
        let center = center % m.vertex_count();
        let (sub, _) = distance_preserving_subdivision(&m, center);
        prop_assert!(sub.max_face_degree() <= 6);
        prop_assert_eq!(sub.distances(center), m.distances(center));
    }

    #[test]
    fn each_reduction_removes_one_unit_of_excess(extra in 5usize..9, edge in 0usize..40) {
        let m = attach_boundary_face(&gen_standard(4, 2).unwrap(), 0, 1, extra).unwrap();
        let Ok(c) = build_corridor(&m, edge % m.edge_count(), ContinuationRule::Antipodal) else { return Ok(()) };
        let excess = corridor_excess(&m, &c);
        prop_assume!(excess > 0);
        let t = 1 + c.faces.iter().position(|&f| m.face_degree(f) > 4).unwrap();
        let next = reduce_face_degree(&m, &c, t).unwrap();
        let total = |x: &PlanarMap| (0..x.face_count()).map(|f| x.face_degree(f).saturating_sub(4)).sum::<usize>();
        prop_assert_eq!(total(&next) + 1, total(&m));
    }
}

#[test]
fn interior_splits_at_a_pinch_vertex() {
    let mut cells: BTreeSet<(i64, i64)> = (-3..3).flat_map(|x| (-3..3).map(move |y| (x, y))).collect();
    for c in [(-3, 1), (-2, 1), (1, -2), (2, -2)] {
        cells.remove(&c);
    }
    let m = square_cells(&cells).unwrap();
    let dec = interior(&m);
    assert_eq!(dec.components.len(), 2);
    let shared: Vec<_> = {
        let a: BTreeSet<_> = dec.components[0].vertices.iter().collect();
        dec.components[1].vertices.iter().filter(|v| a.contains(v)).copied().collect()
    };
    assert_eq!(shared.len(), 1);
    // the components touch only at the grid origin, an ordinary interior vertex
    let v = shared[0];
    assert_eq!(m.vertex_degree(v), 4);
    assert!(!m.exterior_flags()[v]);
}
