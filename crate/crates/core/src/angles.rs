//! Angle functions on face corners, with all angles stored as exact
//! rational multiples of pi.
//!
//! The corner keyed by dart `d` of a bounded face walk sits at `origin(d)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::curvature::Element;
use crate::exact::Rational;
use crate::map::{Dart, FaceId, PlanarMap, Vertex};

/// Rational enclosure of pi: `PI_LOWER < pi < PI_UPPER`.
pub fn pi_lower() -> Rational {
    Rational::new(3_141_592_653_589_793, 1_000_000_000_000_000)
}

pub fn pi_upper() -> Rational {
    Rational::new(3_141_592_653_589_794, 1_000_000_000_000_000)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AngleError {
    #[error("map has no edges")]
    NoEdges,
    #[error("corner {0} has no angle")]
    MissingCorner(Dart),
    #[error("dart {0} is not a corner of a bounded face")]
    NotACorner(Dart),
    #[error("corner {0} has a negative angle")]
    Negative(Dart),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("{witness:?} has positive curvature {curvature} pi")]
    PositiveCurvature { witness: Element, curvature: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct AngleFunction {
    pub corners: BTreeMap<Dart, Rational>,
}

impl AngleFunction {
    pub fn new(corners: BTreeMap<Dart, Rational>) -> Self {
        AngleFunction { corners }
    }

    /// Checks that exactly the bounded-face corners carry non-negative angles.
    pub fn check(&self, m: &PlanarMap) -> Result<(), AngleError> {
        for (&d, a) in &self.corners {
            if d >= m.dart_count() || m.face_of(d).is_none() {
                return Err(AngleError::NotACorner(d));
            }
            if a.is_negative() {
                return Err(AngleError::Negative(d));
            }
        }
        for walk in m.faces() {
            if let Some(&d) = walk.iter().find(|d| !self.corners.contains_key(d)) {
                return Err(AngleError::MissingCorner(d));
            }
        }
        Ok(())
    }

    pub fn get(&self, d: Dart) -> Rational {
        self.corners.get(&d).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Gives each corner of a d-gon the angle `(d - 2)/d` pi.
pub fn assign_regular(m: &PlanarMap) -> AngleFunction {
    let mut corners = BTreeMap::new();
    for walk in m.faces() {
        let d = walk.len() as i64;
        for &x in walk {
            corners.insert(x, Rational::new(d - 2, d));
        }
    }
    AngleFunction { corners }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AngleCurvatureReport {
    pub face_curvatures: Vec<Rational>,
    pub vertex_curvatures: Vec<Rational>,
    pub i_f: Rational,
    pub i_v: Rational,
    pub i_v_interior: Rational,
    pub i_v_boundary: Rational,
}

impl AngleCurvatureReport {
    pub fn total(&self) -> Rational {
        &self.i_f + &self.i_v
    }
}

pub fn face_angle_curvature(m: &PlanarMap, a: &AngleFunction, f: FaceId) -> Rational {
    let walk = m.face_walk(f);
    let sum = walk.iter().fold(Rational::zero(), |acc, &d| acc + a.get(d));
    sum - Rational::from(walk.len()) + Rational::from_int(2)
}

/// Face and vertex curvatures in units of pi. Panics if the totals miss 2,
/// which would mean the map itself is inconsistent.
pub fn angle_curvatures(m: &PlanarMap, a: &AngleFunction) -> Result<AngleCurvatureReport, AngleError> {
    if m.edge_count() == 0 {
        return Err(AngleError::NoEdges);
    }
    a.check(m)?;
    let face_curvatures: Vec<Rational> = (0..m.face_count()).map(|f| face_angle_curvature(m, a, f)).collect();
    let mu = m.multiplicities();
    let mut sums = vec![Rational::zero(); m.vertex_count()];
    for walk in m.faces() {
        for &d in walk {
            let v = m.origin(d);
            sums[v] = &sums[v] + &a.get(d);
        }
    }
    let vertex_curvatures: Vec<Rational> = (0..m.vertex_count())
        .map(|v| Rational::from_int(2) - Rational::from(mu[v]) - sums[v].clone())
        .collect();
    let sum = |it: &mut dyn Iterator<Item = Rational>| it.fold(Rational::zero(), |a, b| a + b);
    let i_f = sum(&mut face_curvatures.iter().cloned());
    let i_v = sum(&mut vertex_curvatures.iter().cloned());
    let i_v_interior = sum(&mut (0..m.vertex_count()).filter(|&v| mu[v] == 0).map(|v| vertex_curvatures[v].clone()));
    let i_v_boundary = &i_v - &i_v_interior;
    let report = AngleCurvatureReport { face_curvatures, vertex_curvatures, i_f, i_v, i_v_interior, i_v_boundary };
    assert_eq!(report.total(), Rational::from_int(2), "curvature total must be 2 pi");
    Ok(report)
}

/// Slack `n + I_f + I_v^i - 2` (in units of pi) of the perimeter bound for
/// maps whose faces and interior vertices are not positively curved.
pub fn perimeter_curvature_check(m: &PlanarMap, a: &AngleFunction) -> Result<Rational, AngleError> {
    let n = m.perimeter();
    if n == 0 {
        return Err(AngleError::Hypothesis("perimeter is 0".into()));
    }
    let rep = angle_curvatures(m, a)?;
    if let Some(f) = rep.face_curvatures.iter().position(|k| k.is_positive()) {
        return Err(AngleError::Hypothesis(format!("face {f} is positively curved")));
    }
    let mu = m.multiplicities();
    if let Some(v) = (0..m.vertex_count()).find(|&v| mu[v] == 0 && rep.vertex_curvatures[v].is_positive()) {
        return Err(AngleError::Hypothesis(format!("interior vertex {v} is positively curved")));
    }
    let slack = Rational::from(n) + rep.i_f + rep.i_v_interior - Rational::from_int(2);
    assert!(!slack.is_negative(), "perimeter bound violated");
    Ok(slack)
}

/// Curvature gap of a (delta, b)-map, in units of pi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Delta {
    /// Every face and interior vertex has curvature 0.
    Flat,
    Value(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaBParams {
    pub delta: Delta,
    pub b: usize,
    /// Element attaining the gap.
    pub witness: Option<Element>,
}

/// Largest valid `delta` (the smallest `-curvature` over non-flat faces and
/// interior vertices) and `b` (the largest degree).
pub fn delta_b_params(m: &PlanarMap, a: &AngleFunction) -> Result<DeltaBParams, AngleError> {
    let rep = angle_curvatures(m, a)?;
    let mu = m.multiplicities();
    let b = m.max_vertex_degree().max(m.max_face_degree());
    let faces = rep.face_curvatures.iter().enumerate().map(|(f, k)| (Element::Face(f), k));
    let verts = (0..m.vertex_count()).filter(|&v| mu[v] == 0).map(|v| (Element::Vertex(v), &rep.vertex_curvatures[v]));
    let mut best: Option<(Element, Rational)> = None;
    for (el, k) in faces.chain(verts) {
        if k.is_positive() {
            return Err(AngleError::PositiveCurvature { witness: el, curvature: k.clone() });
        }
        if k.is_zero() {
            continue;
        }
        let gap = -k.clone();
        if best.as_ref().map_or(true, |(_, g)| gap < *g) {
            best = Some((el, gap));
        }
    }
    Ok(match best {
        Some((el, g)) => DeltaBParams { delta: Delta::Value(g), b, witness: Some(el) },
        None => DeltaBParams { delta: Delta::Flat, b, witness: None },
    })
}

/// `|B(d, o)| <= b^d + 1` for every vertex `o`, where `b` is the largest
/// vertex degree. Returns the first counterexample `(o, d, size)`.
pub fn ball_growth_violation(m: &PlanarMap, max_d: usize) -> Option<(Vertex, usize, usize)> {
    let b = Rational::from(m.max_vertex_degree());
    for o in 0..m.vertex_count() {
        let dist = m.distances(o);
        for d in 0..=max_d {
            let size = dist.iter().filter(|&&x| x <= d).count();
            if Rational::from(size) > b.pow(d as u32) + Rational::one() {
                return Some((o, d, size));
            }
        }
    }
    None
}

/// Exact verdict for `actual <= c * pi + rest` given the rational pi enclosure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiBound {
    pub lower: Rational,
    pub upper: Rational,
    pub holds: bool,
}

impl PiBound {
    fn new(actual: &Rational, pi_coeff: &Rational, rest: &Rational) -> Self {
        let lower = pi_coeff * &pi_lower() + rest.clone();
        let upper = pi_coeff * &pi_upper() + rest.clone();
        let holds = *actual <= lower;
        PiBound { lower, upper, holds }
    }

    /// Fails for certain, not just unproven.
    pub fn fails(&self, actual: &Rational) -> bool {
        *actual > self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseReport {
    pub n: usize,
    pub b: usize,
    pub delta: Delta,
    /// Largest distance from a vertex to the special set below.
    pub r: usize,
    pub r_supplied: Option<usize>,
    /// Boundary vertices, non-flat interior vertices and vertices of non-flat faces.
    pub special_vertices: usize,
    pub special_bound: PiBound,
    pub area: usize,
    pub area_bound: PiBound,
    /// `V <= |special| (b^r + 1)`, the ball-covering step.
    pub vertex_cover_holds: bool,
}

impl DenseReport {
    pub fn holds(&self) -> bool {
        self.special_bound.holds
            && self.area_bound.holds
            && self.vertex_cover_holds
            && self.r_supplied.map_or(true, |s| s >= self.r)
    }
}

/// Area bound for (delta, b)-maps whose vertices all lie within `r` of the
/// boundary or a non-flat element. `r` is recomputed; a supplied value
/// below the computed one is reported as a failed hypothesis.
pub fn dense_bound_check(m: &PlanarMap, a: &AngleFunction, r_supplied: Option<usize>) -> Result<DenseReport, AngleError> {
    let params = delta_b_params(m, a)?;
    let rep = angle_curvatures(m, a)?;
    let mu = m.multiplicities();
    let mut special = vec![false; m.vertex_count()];
    for v in 0..m.vertex_count() {
        special[v] = mu[v] > 0 || !rep.vertex_curvatures[v].is_zero();
    }
    for (f, k) in rep.face_curvatures.iter().enumerate() {
        if !k.is_zero() {
            for &d in m.face_walk(f) {
                special[m.origin(d)] = true;
            }
        }
    }
    let sources: Vec<Vertex> = (0..m.vertex_count()).filter(|&v| special[v]).collect();
    let r = multi_source_eccentricity(m, &sources);
    let n = m.perimeter();
    let b = params.b;
    let nr = Rational::from(n);
    let br = Rational::from(b);
    // delta = c pi, so (b / delta + 1) n pi = b n / c + n pi
    let b_over_c = match &params.delta {
        Delta::Flat => Rational::zero(),
        Delta::Value(c) => &br / c,
    };
    let count = sources.len();
    let special_bound = PiBound::new(&Rational::from(count), &nr, &(&b_over_c * &nr));
    // pi b (1 + b / delta)(b^r + 1) n = b (b^r + 1) n (pi + b / c)
    let growth = br.pow(r as u32) + Rational::one();
    let scale = &(&br * &growth) * &nr;
    let area = m.area();
    let area_bound = PiBound::new(&Rational::from(area), &scale, &(&scale * &b_over_c));
    let vertex_cover_holds = Rational::from(m.vertex_count()) <= Rational::from(count) * growth;
    Ok(DenseReport {
        n,
        b,
        delta: params.delta,
        r,
        r_supplied,
        special_vertices: count,
        special_bound,
        area,
        area_bound,
        vertex_cover_holds,
    })
}

fn multi_source_eccentricity(m: &PlanarMap, sources: &[Vertex]) -> usize {
    let mut dist = vec![usize::MAX; m.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        for w in m.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist.into_iter().max().unwrap_or(0)
}
