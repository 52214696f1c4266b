//! Standard maps, seeded random (p,q)-maps and defect injection.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angles::AngleFunction;
use crate::curvature::{is_pq_map, is_pq_star, PQParams};
use crate::dual::{weak_dual, DualError};
use crate::edit::MapEditor;
use crate::exact::Rational;
use crate::map::{Dart, MapError, PlanarMap, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("no standard map for p = {0} (expected 3, 4 or 6)")]
    InvalidP(usize),
    #[error("not enough interior room: {0}")]
    InsufficientInterior(String),
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
    #[error("dual construction failed: {0}")]
    Dual(#[from] DualError),
    #[error("unknown generator spec {0:?}")]
    UnknownSpec(String),
    #[error("{0}")]
    Rejected(String),
}

/// Orders integer direction vectors counterclockwise starting from +x.
fn angular_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |(x, y): (i64, i64)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 * b.1 - a.1 * b.0;
        0.cmp(&cross)
    })
}

/// Builds a map from polygons on integer points. Every pair of consecutive
/// polygon corners is an edge; rotations come from the angular order, so
/// the polygons must tile a disc without crossings. Edges are numbered by
/// sorted endpoint pairs and dart `2k` runs from the smaller endpoint.
pub fn from_polygons(points: &[(i64, i64)], polygons: &[Vec<usize>]) -> Result<PlanarMap, MapError> {
    if polygons.is_empty() {
        return Ok(PlanarMap::single_vertex());
    }
    let mut edges = BTreeSet::new();
    for poly in polygons {
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let mut out: Vec<Vec<Dart>> = vec![Vec::new(); points.len()];
    let mut tip = Vec::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        out[a].push(2 * k);
        out[b].push(2 * k + 1);
        tip.push(b);
        tip.push(a);
    }
    for (v, darts) in out.iter_mut().enumerate() {
        let dir = |d: &Dart| (points[tip[*d]].0 - points[v].0, points[tip[*d]].1 - points[v].1);
        darts.sort_by(|x, y| angular_cmp(dir(x), dir(y)));
    }
    // the outer orbit is the one with positive signed area
    let probe = PlanarMap::new(out.clone(), Some(0))?;
    let mut seen = vec![false; probe.dart_count()];
    let mut outer = None;
    for s in 0..probe.dart_count() {
        if seen[s] {
            continue;
        }
        let mut area2 = 0i64;
        let mut d = s;
        loop {
            seen[d] = true;
            let (p, q) = (points[probe.origin(d)], points[probe.head(d)]);
            area2 += p.0 * q.1 - p.1 * q.0;
            d = probe.phi(d);
            if d == s {
                break;
            }
        }
        if area2 > 0 {
            outer = Some(s);
        }
    }
    PlanarMap::new(out, outer)
}

/// A single face of degree `k` (k >= 1); vertex `i` is joined to `i + 1`.
pub fn polygon(k: usize) -> PlanarMap {
    assert!(k >= 1);
    let rotations = (0..k).map(|i| vec![2 * i, 2 * ((i + k - 1) % k) + 1]).collect();
    PlanarMap::new(rotations, Some(0)).expect("polygon is a valid map")
}

/// Unit squares with lower-left corners at `cells`; vertices are numbered
/// by row, then column.
pub fn square_cells(cells: &BTreeSet<(i64, i64)>) -> Result<PlanarMap, MapError> {
    let mut pts = BTreeSet::new();
    for &(x, y) in cells {
        for c in [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)] {
            pts.insert((c.1, c.0));
        }
    }
    let points: Vec<(i64, i64)> = pts.iter().map(|&(y, x)| (x, y)).collect();
    let index: BTreeMap<(i64, i64), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let polys: Vec<Vec<usize>> = cells
        .iter()
        .map(|&(x, y)| [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)].iter().map(|c| index[c]).collect())
        .collect();
    from_polygons(&points, &polys)
}

/// A `w` by `h` rectangle of unit squares.
pub fn grid(w: usize, h: usize) -> PlanarMap {
    let cells = (0..w as i64).flat_map(|x| (0..h as i64).map(move |y| (x, y))).collect();
    square_cells(&cells).expect("grid is a valid map")
}

/// Triangles of the triangular lattice in axial coordinates: `(a, b, up)`.
/// The up triangle at (a,b) has corners (a,b), (a+1,b), (a,b+1); the down
/// triangle has corners (a+1,b), (a+1,b+1), (a,b+1).
type Tri = (i64, i64, bool);

fn tri_corners(&(a, b, up): &Tri) -> [(i64, i64); 3] {
    if up {
        [(a, b), (a + 1, b), (a, b + 1)]
    } else {
        [(a + 1, b), (a + 1, b + 1), (a, b + 1)]
    }
}

fn tris_at(&(x, y): &(i64, i64)) -> [Tri; 6] {
    [(x, y, true), (x - 1, y, true), (x, y - 1, true), (x - 1, y, false), (x, y - 1, false), (x - 1, y - 1, false)]
}

/// Adds every triangle sharing a corner with the set.
fn grow_tris(tris: &BTreeSet<Tri>) -> BTreeSet<Tri> {
    let mut out = tris.clone();
    for t in tris {
        for c in tri_corners(t) {
            out.extend(tris_at(&c));
        }
    }
    out
}

/// Axial coordinates map linearly (with positive determinant) onto the
/// real lattice, so angular order and orientation carry over unchanged.
fn triangle_map(tris: &BTreeSet<Tri>) -> Result<PlanarMap, MapError> {
    let mut pts = BTreeSet::new();
    for t in tris {
        for c in tri_corners(t) {
            pts.insert((c.1, c.0));
        }
    }
    let points: Vec<(i64, i64)> = pts.iter().map(|&(b, a)| (a, b)).collect();
    let index: BTreeMap<(i64, i64), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let polys: Vec<Vec<usize>> = tris.iter().map(|t| tri_corners(t).iter().map(|c| index[c]).collect()).collect();
    from_polygons(&points, &polys)
}

/// The radius-`n` ball of the regular tessellation by `p`-gons, grown from
/// a vertex for p = 3, 4 and as the weak dual of a triangle-seeded growth
/// for p = 6.
pub fn gen_standard(p: usize, n: usize) -> Result<PlanarMap, GenError> {
    match p {
        4 => {
            let n = n as i64;
            let cells = (-n..n).flat_map(|x| (-n..n).map(move |y| (x, y))).collect();
            Ok(square_cells(&cells)?)
        }
        3 => {
            let mut tris = BTreeSet::new();
            for _ in 0..n {
                tris = if tris.is_empty() { tris_at(&(0, 0)).into_iter().collect() } else { grow_tris(&tris) };
            }
            Ok(triangle_map(&tris)?)
        }
        6 => {
            let mut tris: BTreeSet<Tri> = [(0, 0, true)].into_iter().collect();
            for _ in 0..n {
                tris = grow_tris(&tris);
            }
            Ok(weak_dual(&triangle_map(&tris)?)?)
        }
        _ => Err(GenError::InvalidP(p)),
    }
}

/// Glues a new face onto the boundary along `k` consecutive outer-orbit
/// darts starting at index `start`; the new face has degree `degree`.
pub fn attach_boundary_face(m: &PlanarMap, start: usize, k: usize, degree: usize) -> Result<PlanarMap, GenError> {
    let walk = m.outer_orbit();
    let n = walk.len();
    if k == 0 || k >= n || degree <= k {
        return Err(GenError::Rejected(format!("cannot attach a {degree}-gon along {k} of {n} boundary edges")));
    }
    let a = walk[start % n];
    let b = walk[(start + k) % n];
    let mut ed = MapEditor::from_map(m);
    let path = ed.insert_path(a, b, degree - k);
    ed.set_outer(Some(path[0]));
    Ok(ed.finish()?.map)
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> Option<T> {
    if items.is_empty() {
        None
    } else {
        Some(items[rng.gen_range(0..items.len())])
    }
}

fn random_move(m: &PlanarMap, pq: &PQParams, rng: &mut ChaCha8Rng) -> Option<PlanarMap> {
    let p = pq.pi();
    let roll: f64 = rng.gen();
    let interior: Vec<usize> = (0..m.edge_count()).filter(|&e| m.interior_edge(e)).collect();
    if roll < 0.5 {
        let n = m.perimeter();
        if n < 2 {
            return None;
        }
        let kmax = (p - 1).min(n - 1);
        let k = 1 + rng.gen_range(0..kmax).min(rng.gen_range(0..kmax));
        attach_boundary_face(m, rng.gen_range(0..n), k, p).ok()
    } else if roll < 0.65 {
        let big: Vec<usize> = (0..m.face_count()).filter(|&f| m.face_degree(f) + 2 >= 2 * p).collect();
        let f = pick(rng, &big)?;
        let walk = m.face_walk(f);
        let d = walk.len();
        let i = rng.gen_range(0..d);
        let k = rng.gen_range(p - 1..=d + 1 - p);
        let mut ed = MapEditor::from_map(m);
        ed.insert_edge(walk[i], walk[(i + k) % d]);
        ed.finish().ok().map(|f| f.map)
    } else if roll < 0.82 {
        let e = pick(rng, &interior)?;
        if m.face_of(2 * e) == m.face_of(2 * e + 1) {
            return None;
        }
        let mut ed = MapEditor::from_map(m);
        ed.remove_edge(2 * e);
        ed.finish().ok().map(|f| f.map)
    } else {
        let e = pick(rng, &interior)?;
        if m.origin(2 * e) == m.head(2 * e) {
            return None;
        }
        let mut ed = MapEditor::from_map(m);
        ed.contract_edge(2 * e);
        ed.finish().ok().map(|f| f.map)
    }
}

/// Applies `steps` random moves to `start`, keeping it a (p,q)-map with
/// conditions (B) and (D) after every accepted move.
pub fn random_walk_from(start: PlanarMap, pq: &PQParams, steps: usize, seed: u64) -> PlanarMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = start;
    for _ in 0..steps {
        for _ in 0..16 {
            if let Some(next) = random_move(&m, pq, &mut rng) {
                if is_pq_star(&next, pq) {
                    m = next;
                    break;
                }
            }
        }
    }
    m
}

/// Seeded random (p,q)-map: `steps` moves starting from the standard map of
/// radius 1. The output always satisfies (B) and (D).
pub fn gen_random_pq(pq: &PQParams, steps: usize, seed: u64) -> PlanarMap {
    let start = gen_standard(pq.pi(), 1).expect("standard p");
    let m = random_walk_from(start, pq, steps, seed);
    assert!(is_pq_star(&m, pq), "random generator left the (p,q)* class");
    m
}

/// Shortest path of darts from the boundary to `v`, avoiding `blocked`.
fn path_from_boundary(m: &PlanarMap, v: Vertex, blocked: Option<Vertex>) -> Option<Vec<Dart>> {
    let mut dist = vec![usize::MAX; m.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    dist[v] = 0;
    queue.push_back(v);
    let ext = m.exterior_flags();
    let mut target = None;
    while let Some(x) = queue.pop_front() {
        if ext[x] {
            target = Some(x);
            break;
        }
        for &d in m.rotation(x) {
            let y = m.head(d);
            if Some(y) != blocked && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut x = target?;
    let mut path = Vec::new();
    while x != v {
        let d = *m.rotation(x).iter().filter(|&&d| dist[m.head(d)].checked_add(1) == Some(dist[x])).min()?;
        path.push(d);
        x = m.head(d);
    }
    Some(path)
}

/// Caps boundary vertices of degree at least q with new p-gons until none
/// of the `active` vertices qualifies. Each active vertex is capped at most
/// once, which bounds the work by the size of the set.
fn heal(ed: &mut MapEditor, active: &mut BTreeSet<Vertex>, pq: &PQParams) -> Result<(), GenError> {
    let (p, q) = (pq.pi(), pq.qi());
    let mut skip = BTreeSet::new();
    loop {
        let outer = ed.outer().expect("outer face");
        let walk = ed.walk(outer);
        let n = walk.len();
        if n < 3 {
            return Ok(());
        }
        let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
        for &d in &walk {
            *count.entry(ed.origin(d)).or_default() += 1;
        }
        let cand = active.iter().copied().find(|&w| {
            !skip.contains(&w) && count.get(&w) == Some(&1) && ed.degree(w) >= q && ed.degree(w) < 2 * q
        });
        let Some(w) = cand else { return Ok(()) };
        let j = walk.iter().position(|&d| ed.origin(d) == w).unwrap();
        let a = walk[(j + n - 1) % n];
        let b = walk[(j + 1) % n];
        if ed.origin(a) == ed.origin(b) && p == 3 {
            skip.insert(w);
            continue;
        }
        let path = ed.insert_path(a, b, p - 2);
        ed.set_outer(Some(path[0]));
        active.remove(&w);
    }
}

/// Slits the map open from the boundary to `v` and caps the gash, leaving
/// `v` interior with one extra edge. Returns the map and the new id of `v`
/// together with the new ids of `track`.
fn vertex_defect(
    m: &PlanarMap,
    pq: &PQParams,
    v: Vertex,
    blocked: Option<Vertex>,
    track: &[Vertex],
) -> Result<(PlanarMap, Vertex, Vec<Vertex>), GenError> {
    let path = path_from_boundary(m, v, blocked)
        .ok_or_else(|| GenError::InsufficientInterior(format!("no boundary path to vertex {v}")))?;
    let mut ed = MapEditor::from_map(m);
    let mut active = BTreeSet::new();
    for &d in &path {
        active.insert(m.origin(d));
    }
    active.insert(v);
    // path runs from the boundary to v; each slit exposes the next origin
    for &d in &path {
        let (w, _) = ed.slit_edge(d).map_err(|e| GenError::Rejected(e.into()))?;
        active.insert(w);
    }
    heal(&mut ed, &mut active, pq)?;
    let fin = ed.finish()?;
    let id = |x: Vertex| fin.vertex_map[x].expect("vertex kept");
    Ok((fin.map.clone(), id(v), track.iter().map(|&x| id(x)).collect()))
}

fn face_defect(m: &PlanarMap, pq: &PQParams, rng: &mut ChaCha8Rng) -> Result<PlanarMap, GenError> {
    let (p, q) = (pq.pi(), pq.qi());
    let ext = m.exterior_flags();
    let cands: Vec<usize> = (0..m.edge_count())
        .filter(|&e| {
            let (u, w) = (m.origin(2 * e), m.head(2 * e));
            let (f, g) = (m.face_of(2 * e), m.face_of(2 * e + 1));
            u != w
                && !ext[u]
                && !ext[w]
                && m.vertex_degree(u) == q
                && m.vertex_degree(w) == q
                && f.is_some()
                && g.is_some()
                && f != g
                && m.face_degree(f.unwrap()) == p
                && m.face_degree(g.unwrap()) == p
        })
        .collect();
    let e = pick(rng, &cands).ok_or_else(|| GenError::InsufficientInterior("no flat interior edge".into()))?;
    let (u, w) = (m.origin(2 * e), m.head(2 * e));
    let (m1, u1, ws) = vertex_defect(m, pq, u, Some(w), &[w])?;
    let (m2, w2, us) = vertex_defect(&m1, pq, ws[0], Some(u1), &[u1])?;
    let u2 = us[0];
    let d = *m2
        .rotation(u2)
        .iter()
        .find(|&&d| m2.head(d) == w2)
        .ok_or_else(|| GenError::Rejected("merge edge lost".into()))?;
    let mut ed = MapEditor::from_map(&m2);
    ed.remove_edge(d);
    Ok(ed.finish()?.map)
}

const DEFECT_ATTEMPTS: usize = 16;

fn one_defect(cur: &PlanarMap, pq: &PQParams, rng: &mut ChaCha8Rng) -> Result<Option<PlanarMap>, GenError> {
    if rng.gen_bool(0.5) {
        if let Ok(x) = face_defect(cur, pq, rng) {
            return Ok(Some(x));
        }
    }
    let ext = cur.exterior_flags();
    let flat: Vec<Vertex> = (0..cur.vertex_count()).filter(|&v| !ext[v] && cur.vertex_degree(v) == pq.qi()).collect();
    let v = pick(rng, &flat).ok_or_else(|| GenError::InsufficientInterior("no flat interior vertex".into()))?;
    Ok(vertex_defect(cur, pq, v, None, &[]).ok().map(|r| r.0))
}

/// Injects `count` negative-curvature defects. Each is either an interior
/// vertex of degree q + 1 (the map is slit from the boundary to a flat
/// vertex and the gash capped with p-gons) or a merged face of degree
/// 2p - 2 (two adjacent vertices raised this way, then their edge deleted).
pub fn perturb_defects(m: &PlanarMap, pq: &PQParams, count: usize, seed: u64) -> Result<PlanarMap, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = m.clone();
    for _ in 0..count {
        // a cap can push a boundary vertex past 2q - 1; retry elsewhere
        let mut accepted = None;
        for _ in 0..DEFECT_ATTEMPTS {
            if let Some(x) = one_defect(&cur, pq, &mut rng)? {
                if is_pq_star(&x, pq) {
                    accepted = Some(x);
                    break;
                }
            }
        }
        cur = accepted.ok_or_else(|| GenError::Rejected("no defect placement keeps the map a (p,q)*-map".into()))?;
    }
    match is_pq_map(&cur, pq) {
        Ok(v) if v.holds => Ok(cur),
        _ => Err(GenError::Rejected("perturbation broke the (p,q) property".into())),
    }
}

/// Independent non-negative angles `k/d * pi` on every bounded-face
/// corner, with `k` in `0..=12` and `d` in `1..=6`.
pub fn random_angle_function(m: &PlanarMap, seed: u64) -> AngleFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corners = m
        .faces()
        .iter()
        .flatten()
        .map(|&d| (d, Rational::new(rng.gen_range(0..=12), rng.gen_range(1..=6))))
        .collect();
    AngleFunction::new(corners)
}

/// A corpus generator description: `standard:P[:N]`, `polygon:P`,
/// `random:P,Q[:STEPS]` or `perturb:P,Q[:DEFECTS]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Standard { p: usize, n: Option<usize> },
    Polygon { p: usize },
    Random { p: usize, q: usize, steps: Option<usize> },
    Perturb { p: usize, q: usize, defects: Option<usize> },
}

impl std::str::FromStr for GenSpec {
    type Err = GenError;
    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::UnknownSpec(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let pair = |t: &str| -> Result<(usize, usize), GenError> {
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        };
        let extra = |i: usize| -> Result<Option<usize>, GenError> { parts.get(i).map(|t| num(t)).transpose() };
        if parts.len() > 3 {
            return Err(bad());
        }
        let spec = match parts[0] {
            "standard" => GenSpec::Standard { p: num(parts.get(1).ok_or_else(bad)?)?, n: extra(2)? },
            "polygon" if parts.len() == 2 => GenSpec::Polygon { p: num(parts[1])? },
            "random" => {
                let (p, q) = pair(parts.get(1).ok_or_else(bad)?)?;
                GenSpec::Random { p, q, steps: extra(2)? }
            }
            "perturb" => {
                let (p, q) = pair(parts.get(1).ok_or_else(bad)?)?;
                GenSpec::Perturb { p, q, defects: extra(2)? }
            }
            _ => return Err(bad()),
        };
        spec.pq()?;
        Ok(spec)
    }
}

impl std::fmt::Display for GenSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tail = |x: Option<usize>| x.map(|v| format!(":{v}")).unwrap_or_default();
        match *self {
            GenSpec::Standard { p, n } => write!(f, "standard:{p}{}", tail(n)),
            GenSpec::Polygon { p } => write!(f, "polygon:{p}"),
            GenSpec::Random { p, q, steps } => write!(f, "random:{p},{q}{}", tail(steps)),
            GenSpec::Perturb { p, q, defects } => write!(f, "perturb:{p},{q}{}", tail(defects)),
        }
    }
}

impl GenSpec {
    pub fn pq(&self) -> Result<PQParams, GenError> {
        let r = match *self {
            GenSpec::Standard { p, .. } | GenSpec::Polygon { p } => PQParams::standard_for(p),
            GenSpec::Random { p, q, .. } | GenSpec::Perturb { p, q, .. } => PQParams::standard(p, q),
        };
        r.map_err(|e| GenError::UnknownSpec(e.to_string()))
    }

    /// The `index`-th corpus item; every item draws its own seed from a
    /// stream keyed by `seed`, so items are independent of evaluation order.
    pub fn generate(&self, index: usize, seed: u64) -> Result<PlanarMap, GenError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let item_seed: u64 = rng.gen();
        let pq = self.pq()?;
        match *self {
            GenSpec::Standard { p, n } => gen_standard(p, n.unwrap_or(1 + index % 4)),
            GenSpec::Polygon { p } => Ok(polygon(p)),
            GenSpec::Random { p, steps, .. } => {
                let start = if index % 2 == 0 { polygon(p) } else { gen_standard(p, 1)? };
                let steps = match steps {
                    Some(s) => s,
                    None if index == 0 => 0,
                    None => rng.gen_range(1..=40),
                };
                Ok(random_walk_from(start, &pq, steps, item_seed))
            }
            GenSpec::Perturb { p, defects, .. } => {
                let n = 2 + index % 2;
                let base = gen_standard(p, n)?;
                let base = random_walk_from(base, &pq, rng.gen_range(0..10), item_seed);
                let k = defects.unwrap_or(1 + index % 3);
                perturb_defects(&base, &pq, k, item_seed)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{classify_flat, pq_curvatures};

    fn brute_radius(m: &PlanarMap) -> usize {
        // all-pairs search, independent of the multi-source routine
        let ext = m.exterior_flags();
        (0..m.vertex_count())
            .map(|v| {
                let d = m.distances(v);
                (0..m.vertex_count()).filter(|&w| ext[w]).map(|w| d[w]).min().unwrap()
            })
            .max()
            .unwrap()
    }

    #[test]
    fn square_grids() {
        for n in 1..=3 {
            let m = gen_standard(4, n).unwrap();
            assert_eq!(m.vertex_count(), (2 * n + 1) * (2 * n + 1));
            assert_eq!(m.face_count(), 4 * n * n);
            assert_eq!(m.perimeter(), 8 * n);
            assert_eq!(brute_radius(&m), n);
            assert_eq!(m.radius(), n);
        }
        let m = gen_standard(4, 1).unwrap();
        assert_eq!(m.edge_count(), 12);
    }

    #[test]
    fn triangulated_hexagons() {
        let m = gen_standard(3, 1).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count(), m.perimeter()), (7, 12, 6, 6));
        assert_eq!(m.max_vertex_degree(), 6);
        let m = gen_standard(3, 2).unwrap();
        assert_eq!((m.vertex_count(), m.face_count(), m.perimeter()), (19, 24, 12));
        assert_eq!(gen_standard(3, 0).unwrap().vertex_count(), 1);
    }

    #[test]
    fn hexagonal_patches_are_flat() {
        let pq = PQParams::standard(6, 3).unwrap();
        assert_eq!(gen_standard(6, 0).unwrap().vertex_count(), 1);
        let m = gen_standard(6, 1).unwrap();
        assert_eq!((m.vertex_count(), m.face_count()), (13, 3));
        for n in 1..=3 {
            let m = gen_standard(6, n).unwrap();
            let c = classify_flat(&m, &pq);
            assert!(c.non_flat_faces.is_empty() && c.non_flat_interior_vertices.is_empty());
            assert!(m.is_boundary_simple());
        }
    }

    #[test]
    fn invalid_p() {
        assert_eq!(gen_standard(5, 1), Err(GenError::InvalidP(5)));
    }

    #[test]
    fn random_maps_are_deterministic_and_valid() {
        for (p, q) in [(3, 6), (4, 4), (6, 3)] {
            let pq = PQParams::standard(p, q).unwrap();
            let a = gen_random_pq(&pq, 60, 1);
            let b = gen_random_pq(&pq, 60, 1);
            assert_eq!(a, b);
            assert!(a.validation_report().passed());
            assert!(a.face_count() > 4);
        }
        let pq = PQParams::standard(4, 4).unwrap();
        assert_eq!(gen_random_pq(&pq, 0, 5), gen_standard(4, 1).unwrap());
    }

    #[test]
    fn one_defect_on_a_grid() {
        let pq = PQParams::standard(4, 4).unwrap();
        let m = gen_standard(4, 4).unwrap();
        for seed in 0..8 {
            let out = perturb_defects(&m, &pq, 1, seed).unwrap();
            let c = classify_flat(&out, &pq);
            assert_eq!(c.non_flat_faces.len() + c.non_flat_interior_vertices.len(), 1, "seed {seed}");
            assert_eq!(pq_curvatures(&out, &pq).i_v + pq_curvatures(&out, &pq).i_f, 4);
        }
        assert_eq!(perturb_defects(&m, &pq, 0, 3).unwrap(), m);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("random:4,4".parse::<GenSpec>().unwrap(), GenSpec::Random { p: 4, q: 4, steps: None });
        assert_eq!("standard:6:2".parse::<GenSpec>().unwrap(), GenSpec::Standard { p: 6, n: Some(2) });
        assert!("random:4,5".parse::<GenSpec>().is_err());
        assert!("blob:4".parse::<GenSpec>().is_err());
    }
}
