//! The `pqmap` command line.
//!
//! Every subcommand loads its input, calls one library operation and prints
//! either a JSON report or a `pqm 1` map with the report appended as
//! `# key: value` comment lines. Exit codes: 0 when everything held, 1 when
//! a checked property was violated, 2 for usage or input errors.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{corpus_check, full_check};
use crate::angles::{angle_curvatures, assign_regular, dense_bound_check, delta_b_params, AngleFunction};
use crate::corridor::{
    build_corridor, collapse_corridor, corridor_excess, distance_preserving_subdivision, reduce_face_degree,
    ContinuationRule, CorridorError,
};
use crate::curvature::{classify_flat, is_pq_map, is_pq_star, pq_curvatures, satisfies_b, satisfies_d, PQParams};
use crate::dual::weak_dual;
use crate::exact::Rational;
use crate::format::{append_report, parse, parse_raw, serialize, serialize_with_angles, MapFile};
use crate::generators::{gen_random_pq, gen_standard, perturb_defects, GenSpec};
use crate::map::{Dart, PlanarMap};
use crate::render::{render, RenderFormat};
use crate::submap::{ball_growth, defect_distance, flat_ball_radius, interior, shell_submap, ShellError};
use crate::surgery::{
    adjust_to_star, connecting_forest, cut_along_forest, interior_is_flat, trim_to_condition_d, SurgeryError,
    TrimOutcome,
};

#[derive(Debug, Parser)]
#[command(name = "pqmap", version, about = "Planar (p,q)-maps: checks, surgery and generators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct PqArgs {
    /// Face degree parameter; an integer or a fraction like 7/2.
    #[arg(long)]
    p: Option<String>,
    /// Vertex degree parameter; derived from p when omitted.
    #[arg(long)]
    q: Option<String>,
}

#[derive(Debug, Args)]
struct OutArg {
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Antipodal,
    First,
    Last,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Structural validation of a map file.
    Validate { file: PathBuf },
    /// Counts, degrees and radius.
    Stats { file: PathBuf },
    /// Combinatorial curvature of every face and vertex.
    Curvature {
        file: PathBuf,
        #[command(flatten)]
        pq: PqArgs,
    },
    /// Grown flat-ball radius and defect distance.
    FlatRadius {
        file: PathBuf,
        #[command(flatten)]
        pq: PqArgs,
        /// Also list the growth stages around this vertex.
        #[arg(long)]
        center: Option<usize>,
    },
    /// Components of the strongly interior part.
    Interior { file: PathBuf },
    /// Simple shell submap around a vertex.
    Shell {
        file: PathBuf,
        #[arg(long)]
        center: usize,
        #[arg(long)]
        r: usize,
    },
    /// Adjust to conditions (B) and (D).
    Adjust {
        file: PathBuf,
        #[command(flatten)]
        pq: PqArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Cut away exterior faces of degree below p.
    Trim {
        file: PathBuf,
        #[command(flatten)]
        pq: PqArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Connecting forest of a (p,q)*-map.
    Forest {
        file: PathBuf,
        #[command(flatten)]
        pq: PqArgs,
    },
    /// Cut a (p,q)*-map open along its connecting forest.
    Cut {
        file: PathBuf,
        #[command(flatten)]
        pq: PqArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a corridor from an edge of a (4,4)-map; optionally collapse or reduce it.
    Corridor {
        file: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, value_enum, default_value = "antipodal")]
        rule: Rule,
        #[arg(long, conflicts_with = "reduce")]
        collapse: bool,
        /// 1-based index of the face whose degree to lower.
        #[arg(long)]
        reduce: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Split faces of degree at least 7 keeping distances to a vertex.
    Subdivide7 {
        file: PathBuf,
        #[arg(long)]
        center: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Write the regular angle assignment, or check the angles in the file.
    Angles {
        file: PathBuf,
        #[arg(long)]
        regular: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Angle curvature totals.
    GaussBonnet {
        file: PathBuf,
        /// Ignore angles in the file and use the regular assignment.
        #[arg(long)]
        regular: bool,
    },
    /// Smallest (delta, b) the angle map satisfies.
    DeltaB {
        file: PathBuf,
        #[arg(long)]
        regular: bool,
    },
    /// Special-vertex and area bounds for an angle map.
    DenseCheck {
        file: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        regular: bool,
    },
    /// Validation, curvature identity, contraction and area bounds.
    Check {
        file: PathBuf,
        /// Run every check (the only mode).
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        pq: PqArgs,
    },
    /// Run all checks over a generated corpus.
    Corpus {
        /// standard:P[:N], polygon:P, random:P,Q[:STEPS] or perturb:P,Q[:DEFECTS]
        #[arg(long = "gen")]
        spec: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check random angle functions.
        #[arg(long)]
        angles: bool,
        /// Where to write the smallest failing map.
        #[arg(long)]
        triage: Option<PathBuf>,
    },
    /// Generate a map.
    Gen {
        #[command(flatten)]
        kind: GenKind,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        defects: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Parameters for --perturb; inferred from face degrees when omitted.
        #[command(flatten)]
        pq: PqArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Weak dual of a map.
    Dual {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// DOT or SVG drawing.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        /// Highlight elements that are not flat for these parameters.
        #[command(flatten)]
        pq: PqArgs,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GenKind {
    /// Standard map: P N.
    #[arg(long, num_args = 2, value_names = ["P", "N"])]
    standard: Option<Vec<usize>>,
    /// Random (p,q)-map: P Q.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    random: Option<Vec<usize>>,
    /// Add defects to the map in this file.
    #[arg(long, value_name = "FILE")]
    perturb: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(c) => c,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<MapFile, Failure> {
    Ok(parse(&read_text(path)?)?)
}

fn load_map(path: &PathBuf) -> Result<PlanarMap, Failure> {
    Ok(load(path)?.map)
}

fn to_usize(r: &Rational) -> Option<usize> {
    r.is_integer().then(|| r.numer_string().parse().ok()).flatten()
}

/// Most common face degree among 3, 4 and 6; 4 for maps without faces.
fn infer_p(m: &PlanarMap) -> usize {
    let mut counts = BTreeMap::new();
    for f in 0..m.face_count() {
        let d = m.face_degree(f);
        if matches!(d, 3 | 4 | 6) {
            *counts.entry(d).or_insert(0usize) += 1;
        }
    }
    counts.iter().max_by_key(|&(&d, &c)| (c, std::cmp::Reverse(d))).map_or(4, |(&d, _)| d)
}

fn resolve_pq(args: &PqArgs, m: &PlanarMap) -> Result<PQParams, Failure> {
    let rat = |s: &str| s.parse::<Rational>().map_err(|e| Failure(format!("bad parameter {s:?}: {e}")));
    let p = match &args.p {
        Some(s) => rat(s)?,
        None if args.q.is_some() => return Err(Failure("--q needs --p".into())),
        None => return Ok(PQParams::standard_for(infer_p(m))?),
    };
    let pq = match &args.q {
        None => match to_usize(&p) {
            Some(pi) => PQParams::standard_for(pi).or_else(|_| PQParams::relaxed_for(p.clone()))?,
            None => PQParams::relaxed_for(p)?,
        },
        Some(s) => {
            let q = rat(s)?;
            match (to_usize(&p), to_usize(&q)) {
                (Some(pi), Some(qi)) => PQParams::standard(pi, qi).or_else(|_| PQParams::relaxed(p, q))?,
                _ => PQParams::relaxed(p, q)?,
            }
        }
    };
    Ok(pq)
}

fn angles_for(file: &MapFile, regular: bool) -> Result<AngleFunction, Failure> {
    if regular || file.angles.is_empty() {
        return Ok(assign_regular(&file.map));
    }
    let a = AngleFunction::new(file.angles.clone());
    a.check(&file.map)?;
    Ok(a)
}

fn json_out<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_text(out: &mut dyn Write, dest: &OutArg, text: &str) -> Result<(), Failure> {
    match &dest.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_map(
    out: &mut dyn Write,
    dest: &OutArg,
    m: &PlanarMap,
    angles: Option<&BTreeMap<Dart, Rational>>,
    report: &[(&str, String)],
) -> Result<(), Failure> {
    let mut text = match angles {
        Some(a) => serialize_with_angles(m, a),
        None => serialize(m),
    };
    let pairs: Vec<(String, String)> = report.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    append_report(&mut text, &pairs);
    emit_text(out, dest, &text)
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Cmd::Validate { file } => {
            let raw = parse_raw(&read_text(&file)?)?;
            let report = raw.raw.validate();
            json_out(out, &report)?;
            Ok(code(report.passed()))
        }
        Cmd::Stats { file } => {
            let m = load_map(&file)?;
            let mut face_degrees: BTreeMap<usize, usize> = BTreeMap::new();
            for f in 0..m.face_count() {
                *face_degrees.entry(m.face_degree(f)).or_default() += 1;
            }
            let mut vertex_degrees: BTreeMap<usize, usize> = BTreeMap::new();
            for v in 0..m.vertex_count() {
                *vertex_degrees.entry(m.vertex_degree(v)).or_default() += 1;
            }
            json_out(
                out,
                &json!({
                    "vertices": m.vertex_count(),
                    "edges": m.edge_count(),
                    "faces": m.face_count(),
                    "perimeter": m.perimeter(),
                    "area": m.area(),
                    "radius": m.radius(),
                    "interior_edges": m.interior_edge_count(),
                    "boundary_simple": m.is_boundary_simple(),
                    "face_degrees": face_degrees,
                    "vertex_degrees": vertex_degrees,
                }),
            )?;
            Ok(0)
        }
        Cmd::Curvature { file, pq } => {
            let m = load_map(&file)?;
            let pq = resolve_pq(&pq, &m)?;
            let report = pq_curvatures(&m, &pq);
            let identity = &report.i_f + &report.i_v == *pq.p();
            let verdict = is_pq_map(&m, &pq).map_err(Failure::from);
            json_out(
                out,
                &json!({
                    "curvature": report,
                    "identity_holds": identity,
                    "pq_map": verdict.as_ref().ok(),
                    "pq_map_error": verdict.as_ref().err().map(|e| e.0.clone()),
                    "condition_b": pq.is_integral() && satisfies_b(&m, &pq),
                    "condition_d": pq.is_integral() && satisfies_d(&m, &pq),
                    "star": pq.is_integral() && is_pq_star(&m, &pq),
                    "flat": classify_flat(&m, &pq),
                }),
            )?;
            Ok(code(identity))
        }
        Cmd::FlatRadius { file, pq, center } => {
            let m = load_map(&file)?;
            let pq = resolve_pq(&pq, &m)?;
            let (_, r_defect) = defect_distance(&m, &pq);
            let stages = match center {
                Some(o) if o >= m.vertex_count() => return Err(Failure(format!("vertex {o} does not exist"))),
                Some(o) => Some(ball_growth(&m, &pq, o, m.vertex_count())),
                None => None,
            };
            json_out(
                out,
                &json!({
                    "flat_ball_radius": flat_ball_radius(&m, &pq),
                    "defect_distance_radius": r_defect,
                    "center": center,
                    "stages": stages,
                }),
            )?;
            Ok(0)
        }
        Cmd::Interior { file } => {
            let m = load_map(&file)?;
            let dec = interior(&m);
            let comps: Vec<_> = dec
                .components
                .iter()
                .map(|c| {
                    json!({
                        "faces": c.faces,
                        "vertices": c.vertices,
                        "perimeter": c.perimeter(),
                        "area": c.area(),
                        "simple": c.simple,
                    })
                })
                .collect();
            json_out(out, &json!({ "components": comps, "y_length": dec.y_length }))?;
            Ok(0)
        }
        Cmd::Shell { file, center, r } => {
            let m = load_map(&file)?;
            match shell_submap(&m, center, r) {
                Ok(s) => {
                    json_out(
                        out,
                        &json!({
                            "faces": s.submap.faces,
                            "perimeter": s.submap.perimeter(),
                            "area": s.submap.area(),
                            "min_boundary_distance": s.min_boundary_distance,
                            "max_boundary_distance": s.max_boundary_distance,
                        }),
                    )?;
                    Ok(0)
                }
                Err(e @ ShellError::Bounds { .. }) => {
                    let _ = writeln!(err, "{e}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Adjust { file, pq, out: dest } => {
            let m = load_map(&file)?;
            let pq = resolve_pq(&pq, &m)?;
            if !pq.is_integral() {
                return Err(Failure("adjustment needs integral p and q".into()));
            }
            let was_pq = matches!(is_pq_map(&m, &pq), Ok(v) if v.holds);
            let (outcome, report) = adjust_to_star(&m, &pq);
            let n = report.perimeter_before;
            let ok = !was_pq
                || (report.perimeter_after <= (pq.pi() - 1) * n && report.area_before - report.area_after <= n);
            match outcome {
                TrimOutcome::Trimmed { map, .. } => emit_map(
                    out,
                    &dest,
                    &map,
                    None,
                    &[
                        ("perimeter_before", report.perimeter_before.to_string()),
                        ("area_before", report.area_before.to_string()),
                        ("perimeter_after", report.perimeter_after.to_string()),
                        ("area_after", report.area_after.to_string()),
                        ("removed_faces", report.removed_faces.to_string()),
                    ],
                )?,
                TrimOutcome::Emptied { .. } => json_out(out, &report)?,
            }
            Ok(code(ok))
        }
        Cmd::Trim { file, pq, out: dest } => {
            let m = load_map(&file)?;
            let pq = resolve_pq(&pq, &m)?;
            if !pq.is_integral() {
                return Err(Failure("trimming needs integral p and q".into()));
            }
            match trim_to_condition_d(&m, &pq)? {
                TrimOutcome::Trimmed { map, removed } => {
                    emit_map(out, &dest, &map, None, &[("removed_faces", removed.to_string())])?
                }
                TrimOutcome::Emptied { removed } => json_out(out, &json!({ "emptied": true, "removed_faces": removed }))?,
            }
            Ok(0)
        }
        Cmd::Forest { file, pq } => {
            let m = load_map(&file)?;
            let pq = resolve_pq(&pq, &m)?;
            match connecting_forest(&m, &pq) {
                Ok(f) => {
                    json_out(out, &json!({ "perimeter": m.perimeter(), "forest": f }))?;
                    Ok(0)
                }
                Err(SurgeryError::Invariant(msg)) => {
                    let _ = writeln!(err, "forest invariant violated: {msg}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Cut { file, pq, out: dest } => {
            let m = load_map(&file)?;
            let pq = resolve_pq(&pq, &m)?;
            let forest = match connecting_forest(&m, &pq) {
                Ok(f) => f,
                Err(SurgeryError::Invariant(msg)) => {
                    let _ = writeln!(err, "forest invariant violated: {msg}");
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let cut = cut_along_forest(&m, &forest)?;
            let flat = interior_is_flat(&cut.map, &pq);
            let perimeter_ok = cut.map.perimeter() == cut.perimeter_before + 2 * cut.d;
            emit_map(
                out,
                &dest,
                &cut.map,
                None,
                &[
                    ("perimeter_before", cut.perimeter_before.to_string()),
                    ("forest_edges", cut.d.to_string()),
                    ("perimeter_after", cut.map.perimeter().to_string()),
                    ("interior_flat", flat.to_string()),
                ],
            )?;
            Ok(code(flat && perimeter_ok))
        }
        Cmd::Corridor { file, edge, rule, collapse, reduce, out: dest } => {
            let m = load_map(&file)?;
            let rule = match rule {
                Rule::Antipodal => ContinuationRule::Antipodal,
                Rule::First => ContinuationRule::First,
                Rule::Last => ContinuationRule::Last,
            };
            let c = match build_corridor(&m, edge, rule) {
                Ok(c) => c,
                Err(e @ CorridorError::SideNotSimple(_)) => {
                    let _ = writeln!(err, "{e}");
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            if collapse {
                let done = collapse_corridor(&m, &c)?;
                emit_map(out, &dest, &done.map, None, &[("collapsed_faces", c.len().to_string())])?;
            } else if let Some(t) = reduce {
                let before = m.face_degree(*c.faces.get(t.wrapping_sub(1)).ok_or_else(|| Failure(format!("no face {t}")))?);
                let done = reduce_face_degree(&m, &c, t)?;
                emit_map(
                    out,
                    &dest,
                    &done,
                    None,
                    &[("reduced_face", t.to_string()), ("degree_before", before.to_string())],
                )?;
            } else {
                json_out(
                    out,
                    &json!({
                        "corridor": c,
                        "length": c.len(),
                        "left_length": c.left_length(),
                        "right_length": c.right_length(),
                        "excess": corridor_excess(&m, &c),
                    }),
                )?;
            }
            Ok(0)
        }
        Cmd::Subdivide7 { file, center, out: dest } => {
            let m = load_map(&file)?;
            if center >= m.vertex_count() {
                return Err(Failure(format!("vertex {center} does not exist")));
            }
            let (done, moves) = distance_preserving_subdivision(&m, center);
            let diagonals: Vec<String> = moves.iter().map(|d| format!("{}-{}", d.from, d.to)).collect();
            emit_map(
                out,
                &dest,
                &done,
                None,
                &[("diagonals", moves.len().to_string()), ("moves", diagonals.join(" "))],
            )?;
            Ok(0)
        }
        Cmd::Angles { file, regular, out: dest } => {
            let file = load(&file)?;
            if regular {
                let a = assign_regular(&file.map);
                emit_map(out, &dest, &file.map, Some(&a.corners), &[])?;
                return Ok(0);
            }
            if file.angles.is_empty() {
                return Err(Failure("file has no angles; pass --regular".into()));
            }
            let a = AngleFunction::new(file.angles.clone());
            match a.check(&file.map) {
                Ok(()) => {
                    json_out(out, &json!({ "valid": true, "corners": a.corners.len() }))?;
                    Ok(0)
                }
                Err(e) => {
                    json_out(out, &json!({ "valid": false, "error": e.to_string() }))?;
                    Ok(1)
                }
            }
        }
        Cmd::GaussBonnet { file, regular } => {
            let file = load(&file)?;
            let a = angles_for(&file, regular)?;
            let report = angle_curvatures(&file.map, &a)?;
            let total = report.total();
            let ok = total == Rational::from_int(2);
            json_out(out, &json!({ "report": report, "total_over_pi": total, "holds": ok }))?;
            Ok(code(ok))
        }
        Cmd::DeltaB { file, regular } => {
            let file = load(&file)?;
            let a = angles_for(&file, regular)?;
            json_out(out, &delta_b_params(&file.map, &a)?)?;
            Ok(0)
        }
        Cmd::DenseCheck { file, r, regular } => {
            let file = load(&file)?;
            let a = angles_for(&file, regular)?;
            let report = dense_bound_check(&file.map, &a, r)?;
            json_out(out, &report)?;
            Ok(code(report.holds()))
        }
        Cmd::Check { file, all: _, pq } => {
            let m = load_map(&file)?;
            let pq = resolve_pq(&pq, &m)?;
            let report = full_check(&m, &pq);
            json_out(out, &report)?;
            Ok(code(report.passed()))
        }
        Cmd::Corpus { spec, count, seed, angles, triage } => {
            let spec: GenSpec = spec.parse()?;
            let (report, smallest) = corpus_check(&spec, count, seed, angles)?;
            json_out(out, &report)?;
            if let (Some(path), Some(m)) = (triage, smallest) {
                std::fs::write(&path, serialize(&m)).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            Ok(code(report.passed()))
        }
        Cmd::Gen { kind, steps, defects, seed, pq, out: dest } => {
            let (m, label) = if let Some(v) = kind.standard {
                (gen_standard(v[0], v[1])?, format!("standard {} {}", v[0], v[1]))
            } else if let Some(v) = kind.random {
                let params = PQParams::standard(v[0], v[1])?;
                (gen_random_pq(&params, steps, seed), format!("random {} {} steps {steps} seed {seed}", v[0], v[1]))
            } else if let Some(path) = kind.perturb {
                let base = load_map(&path)?;
                let params = resolve_pq(&pq, &base)?;
                (perturb_defects(&base, &params, defects, seed)?, format!("perturb defects {defects} seed {seed}"))
            } else {
                unreachable!("clap requires one generator")
            };
            emit_map(out, &dest, &m, None, &[("generator", label)])?;
            Ok(0)
        }
        Cmd::Dual { file, out: dest } => {
            let m = load_map(&file)?;
            let d = weak_dual(&m)?;
            emit_map(out, &dest, &d, None, &[])?;
            Ok(0)
        }
        Cmd::Render { file, format, pq, out: dest } => {
            let m = load_map(&file)?;
            let params = if pq.p.is_some() { Some(resolve_pq(&pq, &m)?) } else { None };
            let format = match format {
                Format::Dot => RenderFormat::Dot,
                Format::Svg => RenderFormat::Svg,
            };
            let r = render(&m, format, params.as_ref())?;
            if let Some(w) = &r.warning {
                let _ = writeln!(err, "warning: {w}");
            }
            emit_text(out, &dest, &r.text)?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let full = std::iter::once("pqmap").chain(args.iter().copied());
        let c = run(full, &mut o, &mut e);
        (c, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    fn temp_map(name: &str, m: &PlanarMap) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("pqmap-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, serialize(m)).unwrap();
        path
    }

    #[test]
    fn exit_codes() {
        let g = temp_map("g.pqm", &gen_standard(4, 2).unwrap());
        let g = g.to_str().unwrap();
        assert_eq!(call(&["validate", g]).0, 0);
        assert_eq!(call(&["validate", "/nonexistent/x.pqm"]).0, 2);
        assert_eq!(call(&["stats", g, "--bogus"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        let (c, out, _) = call(&["check", "--all", "--p", "4", "--q", "4", g]);
        assert_eq!(c, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["contraction_slack"], "4/1");
    }

    #[test]
    fn map_outputs_parse_back() {
        let g = temp_map("h.pqm", &gen_standard(4, 2).unwrap());
        let g = g.to_str().unwrap();
        for args in [
            vec!["dual", g],
            vec!["angles", "--regular", g],
            vec!["cut", g],
            vec!["corridor", "--edge", "1", "--collapse", g],
            vec!["subdivide7", "--center", "12", g],
            vec!["gen", "--standard", "6", "2"],
            vec!["gen", "--random", "3", "6", "--steps", "5", "--seed", "3"],
        ] {
            let (c, out, err) = call(&args);
            assert_eq!(c, 0, "{args:?}: {err}");
            parse(&out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        }
    }

    #[test]
    fn corpus_is_repeatable() {
        let a = call(&["corpus", "--gen", "random:4,4", "--count", "20", "--seed", "9"]);
        let b = call(&["corpus", "--gen", "random:4,4", "--count", "20", "--seed", "9"]);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
    }
}
