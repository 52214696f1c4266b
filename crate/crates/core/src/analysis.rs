//! Exact evaluation of the area and boundary bounds on single maps, and
//! seeded corpus runs that aggregate every check.

use serde::Serialize;

use crate::angles::{angle_curvatures, assign_regular, perimeter_curvature_check, AngleError};
use crate::curvature::{exterior_faces, is_pq_map, is_pq_star, pq_curvatures, satisfies_d, PQParams};
use crate::exact::Rational;
use crate::generators::{GenError, GenSpec};
use crate::map::PlanarMap;
use crate::submap::{contraction_check, defect_distance, flat_ball_radius, weakly_exterior_faces, ContractionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("map is not a (p,q)-map")]
    NotPq,
    #[error("bounds need integral p and q")]
    NotIntegral,
    #[error(transparent)]
    Gen(#[from] GenError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub key: &'static str,
    pub name: &'static str,
    pub bound: Option<Rational>,
    pub actual: Rational,
    pub preconditions_met: bool,
    /// `None` when skipped or when the entry only tracks a value.
    pub holds: Option<bool>,
    pub skipped: Option<String>,
}

impl BoundEntry {
    fn evaluated(key: &'static str, name: &'static str, actual: Rational, bound: Rational) -> Self {
        let holds = Some(actual <= bound);
        BoundEntry { key, name, bound: Some(bound), actual, preconditions_met: true, holds, skipped: None }
    }

    /// `actual >= bound` instead of `<=`.
    fn evaluated_lower(key: &'static str, name: &'static str, actual: Rational, bound: Rational) -> Self {
        let holds = Some(actual >= bound);
        BoundEntry { key, name, bound: Some(bound), actual, preconditions_met: true, holds, skipped: None }
    }

    fn skipped(key: &'static str, name: &'static str, actual: Rational, why: &str) -> Self {
        BoundEntry { key, name, bound: None, actual, preconditions_met: false, holds: None, skipped: Some(why.into()) }
    }

    pub fn violated(&self) -> bool {
        self.holds == Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub area_faces: usize,
    pub area_vertices: usize,
    pub radius: usize,
    pub r_defect: usize,
    pub r_flatball: usize,
    pub star: bool,
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn entry(&self, key: &str) -> &BoundEntry {
        self.entries.iter().find(|e| e.key == key).expect("known entry key")
    }

    pub fn violations(&self) -> Vec<&BoundEntry> {
        self.entries.iter().filter(|e| e.violated()).collect()
    }
}

fn q(v: usize) -> Rational {
    Rational::from(v)
}

/// Evaluates every area and boundary bound that applies to `m`, exactly.
///
/// Keys: `a` general area bound, `b` area bound for (p,q)*-maps, `c` area
/// by radius, `d` weakly exterior faces by perimeter, `e` area at radius
/// zero, `f` weakly exterior faces by exterior degrees, `g` boundary
/// curvature, `h` vertices over squared perimeter (tracked only).
pub fn bounds_report(m: &PlanarMap, pq: &PQParams) -> Result<BoundsReport, AnalysisError> {
    if !pq.is_integral() {
        return Err(AnalysisError::NotIntegral);
    }
    if !matches!(is_pq_map(m, pq), Ok(v) if v.holds) {
        return Err(AnalysisError::NotPq);
    }
    let (p, qq) = (pq.pi(), pq.qi());
    let n = m.perimeter();
    let area = m.area();
    let radius = m.radius();
    let r_flat = flat_ball_radius(m, pq);
    let (_, r_defect) = defect_distance(m, pq);
    let star = is_pq_star(m, pq);
    let all_faces_large = satisfies_d(m, pq);
    let curv = pq_curvatures(m, pq);
    let weak_ext = weakly_exterior_faces(m).len();
    let mut entries = Vec::new();

    // (a) C (r + p) n with C = 3/2 (p-1)(q+1)
    let c = Rational::new(3, 2) * q(p - 1) * q(qq + 1);
    entries.push(BoundEntry::evaluated("a", "general area bound", q(area), c * q(r_flat + p) * q(n)));

    // (b) (3q/2 + 1)(r + p) n
    let name_b = "area bound for (p,q)*-maps";
    entries.push(if !star {
        BoundEntry::skipped("b", name_b, q(area), "not a (p,q)*-map")
    } else if !m.is_boundary_simple() {
        BoundEntry::skipped("b", name_b, q(area), "boundary is not simple")
    } else {
        let k = Rational::new(3 * qq as i64, 2) + Rational::one();
        BoundEntry::evaluated("b", name_b, q(area), k * q(r_flat + p) * q(n))
    });

    // (c) radius <= r - 1 gives area <= (q/p) r n; take r = radius + 1
    let ratio = Rational::new(qq as i64, p as i64);
    let name_c = "area bound by radius";
    entries.push(if !all_faces_large {
        BoundEntry::skipped("c", name_c, q(area), "a face has degree below p")
    } else if n == 0 {
        BoundEntry::skipped("c", name_c, q(area), "perimeter is 0")
    } else {
        BoundEntry::evaluated("c", name_c, q(area), &ratio * &q(radius + 1) * q(n))
    });

    // (d) weakly exterior faces <= (q/p) n - q
    let name_d = "weakly exterior faces by perimeter";
    entries.push(if !all_faces_large {
        BoundEntry::skipped("d", name_d, q(weak_ext), "a face has degree below p")
    } else if n == 0 {
        BoundEntry::skipped("d", name_d, q(weak_ext), "perimeter is 0")
    } else if area < 2 {
        BoundEntry::skipped("d", name_d, q(weak_ext), "Area < 2")
    } else {
        BoundEntry::evaluated("d", name_d, q(weak_ext), &ratio * &q(n) - q(qq))
    });

    // (e) radius 0 gives area <= q (n - 2) / 2p
    let name_e = "area bound at radius zero";
    entries.push(if !all_faces_large {
        BoundEntry::skipped("e", name_e, q(area), "a face has degree below p")
    } else if radius != 0 {
        BoundEntry::skipped("e", name_e, q(area), "radius is positive")
    } else if n == 0 {
        BoundEntry::skipped("e", name_e, q(area), "perimeter is 0")
    } else {
        let bound = q(qq) * (Rational::from(n) - Rational::from_int(2)) / q(2 * p);
        BoundEntry::evaluated("e", name_e, q(area), bound)
    });

    // (f) weakly exterior faces <= sum of exterior degrees - 2m
    let ext = m.exterior_vertices();
    let deg_sum: usize = ext.iter().map(|&v| m.vertex_degree(v)).sum();
    let bound_f = Rational::from(deg_sum) - Rational::from(2 * ext.len());
    let name_f = "weakly exterior faces by exterior degrees";
    entries.push(if area < 2 {
        BoundEntry::skipped("f", name_f, q(weak_ext), "Area < 2")
    } else {
        BoundEntry::evaluated("f", name_f, q(weak_ext), bound_f)
    });

    // (g) boundary curvature at least p
    let name_g = "boundary vertex curvature";
    entries.push(if !all_faces_large {
        BoundEntry::skipped("g", name_g, curv.i_v_boundary.clone(), "a face has degree below p")
    } else {
        BoundEntry::evaluated_lower("g", name_g, curv.i_v_boundary.clone(), pq.p().clone())
    });

    // (h) vertex count over squared perimeter, tracked
    let ratio_h = if n == 0 { Rational::zero() } else { q(m.vertex_count()) / q(n * n) };
    entries.push(BoundEntry {
        key: "h",
        name: "vertices per squared perimeter",
        bound: None,
        actual: ratio_h,
        preconditions_met: n > 0,
        holds: None,
        skipped: None,
    });

    Ok(BoundsReport {
        n,
        area_faces: area,
        area_vertices: m.vertex_count(),
        radius,
        r_defect,
        r_flatball: r_flat,
        star,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvatureTotals {
    pub i_f: Rational,
    pub i_v: Rational,
    pub total: Rational,
    pub expected: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullCheck {
    pub valid: bool,
    pub pq_map: bool,
    pub star: bool,
    pub exterior_face_count: usize,
    pub curvature: CurvatureTotals,
    pub contraction_slack: Option<Rational>,
    pub contraction_skipped: Option<String>,
    pub bounds: Option<BoundsReport>,
}

impl FullCheck {
    pub fn passed(&self) -> bool {
        self.valid
            && self.curvature.total == self.curvature.expected
            && self.contraction_slack.as_ref().map_or(true, |s| !s.is_negative())
            && self.bounds.as_ref().map_or(true, |b| b.violations().is_empty())
    }
}

/// Validation, curvature identity, contraction slack and all bounds.
pub fn full_check(m: &PlanarMap, pq: &PQParams) -> FullCheck {
    let valid = m.validation_report().passed();
    let pq_map = matches!(is_pq_map(m, pq), Ok(v) if v.holds);
    let curv = pq_curvatures(m, pq);
    let curvature = CurvatureTotals {
        total: &curv.i_f + &curv.i_v,
        i_f: curv.i_f,
        i_v: curv.i_v,
        expected: pq.p().clone(),
    };
    let (contraction_slack, contraction_skipped) = match contraction_check(m, pq) {
        Ok(r) => (Some(r.slack), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let bounds = if pq_map && pq.is_integral() { bounds_report(m, pq).ok() } else { None };
    FullCheck {
        valid,
        pq_map,
        star: is_pq_star(m, pq),
        exterior_face_count: exterior_faces(m).iter().filter(|&&x| x).count(),
        curvature,
        contraction_slack,
        contraction_skipped,
        bounds,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub evaluated: usize,
    pub held: usize,
    pub skipped: usize,
    pub violated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub item: usize,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub generator: String,
    pub count: usize,
    pub seed: u64,
    pub angles: bool,
    pub tallies: Vec<CheckTally>,
    pub max_vertex_ratio: Rational,
    pub violations: Vec<Violation>,
    /// Index of the smallest failing map, by dart count then index.
    pub smallest_failure: Option<usize>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn tally(&self, name: &str) -> Option<&CheckTally> {
        self.tallies.iter().find(|t| t.name == name)
    }
}

struct Tallies(Vec<CheckTally>);

impl Tallies {
    fn get(&mut self, name: &str) -> &mut CheckTally {
        if let Some(i) = self.0.iter().position(|t| t.name == name) {
            return &mut self.0[i];
        }
        self.0.push(CheckTally { name: name.to_string(), ..Default::default() });
        self.0.last_mut().unwrap()
    }

    fn record(&mut self, name: &str, outcome: Option<bool>) {
        let t = self.get(name);
        match outcome {
            None => t.skipped += 1,
            Some(ok) => {
                t.evaluated += 1;
                if ok {
                    t.held += 1;
                } else {
                    t.violated += 1;
                }
            }
        }
    }
}

/// Generates `count` maps from `spec` and `seed` and runs every check on
/// each. Returns the report and the smallest failing map, if any.
pub fn corpus_check(spec: &GenSpec, count: usize, seed: u64, angles: bool) -> Result<(CorpusReport, Option<PlanarMap>), AnalysisError> {
    let pq = spec.pq()?;
    let mut tallies = Tallies(Vec::new());
    let mut violations = Vec::new();
    let mut max_ratio = Rational::zero();
    let mut smallest: Option<(usize, usize, PlanarMap)> = None;
    for item in 0..count {
        let m = spec.generate(item, seed)?;
        let before = violations.len();
        let mut fail = |check: &str, detail: String| violations.push(Violation { item, check: check.into(), detail });

        let valid = m.validation_report().passed();
        tallies.record("validate", Some(valid));
        if !valid {
            fail("validate", "validation failed".into());
        }
        let curv = pq_curvatures(&m, &pq);
        let total_ok = &curv.i_f + &curv.i_v == *pq.p();
        tallies.record("curvature-total", Some(total_ok));
        if !total_ok {
            fail("curvature-total", format!("I_f + I_v = {}", &curv.i_f + &curv.i_v));
        }
        match contraction_check(&m, &pq) {
            Ok(r) => {
                let ok = !r.slack.is_negative();
                tallies.record("contraction", Some(ok));
                if !ok {
                    fail("contraction", format!("slack {}", r.slack));
                }
            }
            Err(ContractionError::Curvature(e)) => {
                tallies.record("contraction", Some(false));
                fail("contraction", e.to_string());
            }
            Err(_) => tallies.record("contraction", None),
        }
        match bounds_report(&m, &pq) {
            Ok(b) => {
                for e in &b.entries {
                    if e.key == "h" {
                        if e.actual > max_ratio {
                            max_ratio = e.actual.clone();
                        }
                        continue;
                    }
                    tallies.record(&format!("bound-{}", e.key), e.holds);
                    if e.violated() {
                        let bound = e.bound.as_ref().map(|b| b.to_string()).unwrap_or_default();
                        fail(&format!("bound-{}", e.key), format!("{}: actual {} bound {}", e.name, e.actual, bound));
                    }
                }
            }
            Err(e) => {
                tallies.record("pq-map", Some(false));
                fail("pq-map", e.to_string());
            }
        }
        if angles && m.edge_count() > 0 {
            let a = assign_regular(&m);
            match angle_curvatures(&m, &a) {
                Ok(rep) => tallies.record("gauss-bonnet", Some(rep.total() == Rational::from_int(2))),
                Err(e) => {
                    tallies.record("gauss-bonnet", Some(false));
                    fail("gauss-bonnet", e.to_string());
                }
            }
            match perimeter_curvature_check(&m, &a) {
                Ok(_) => tallies.record("perimeter-curvature", Some(true)),
                Err(AngleError::Hypothesis(_)) => tallies.record("perimeter-curvature", None),
                Err(e) => {
                    tallies.record("perimeter-curvature", Some(false));
                    fail("perimeter-curvature", e.to_string());
                }
            }
        }
        if violations.len() > before {
            let size = m.dart_count();
            if smallest.as_ref().map_or(true, |(s, _, _)| size < *s) {
                smallest = Some((size, item, m));
            }
        }
    }
    let report = CorpusReport {
        generator: spec.to_string(),
        count,
        seed,
        angles,
        tallies: tallies.0,
        max_vertex_ratio: max_ratio,
        violations,
        smallest_failure: smallest.as_ref().map(|s| s.1),
    };
    Ok((report, smallest.map(|s| s.2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_standard, polygon};

    #[test]
    fn single_square_hits_the_radius_zero_bound() {
        let pq = PQParams::standard(4, 4).unwrap();
        let rep = bounds_report(&polygon(4), &pq).unwrap();
        let e = rep.entry("e");
        assert_eq!((e.actual.clone(), e.bound.clone()), (Rational::one(), Some(Rational::one())));
        assert_eq!(rep.entry("d").skipped.as_deref(), Some("Area < 2"));
        assert_eq!(rep.entry("f").skipped.as_deref(), Some("Area < 2"));
    }

    #[test]
    fn small_grid_is_tight_for_weakly_exterior_faces() {
        let pq = PQParams::standard(4, 4).unwrap();
        let rep = bounds_report(&gen_standard(4, 1).unwrap(), &pq).unwrap();
        let d = rep.entry("d");
        assert_eq!((d.actual.clone(), d.bound.clone()), (Rational::from_int(4), Some(Rational::from_int(4))));
        assert!(rep.violations().is_empty());
    }

    #[test]
    fn general_bound_on_larger_grid() {
        let pq = PQParams::standard(4, 4).unwrap();
        let m = gen_standard(4, 3).unwrap();
        let rep = bounds_report(&m, &pq).unwrap();
        // grown balls stop short of the boundary, so r is n - 1 here
        assert_eq!(rep.r_flatball, 2);
        let a = rep.entry("a");
        assert_eq!(a.bound, Some(Rational::new(45, 2) * Rational::from_int(6) * Rational::from_int(24)));
        assert_eq!(a.actual, Rational::from_int(36));
        assert_eq!(a.holds, Some(true));
    }

    #[test]
    fn corpus_is_deterministic() {
        let spec: GenSpec = "random:4,4".parse().unwrap();
        let (a, _) = corpus_check(&spec, 20, 3, true).unwrap();
        let (b, _) = corpus_check(&spec, 20, 3, true).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.passed(), "{:?}", a.violations);
    }
}
