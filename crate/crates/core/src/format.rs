//! The `pqm 1` text format.
//!
//! ```text
//! pqm 1
//! vertices 4
//! edges 4
//! rot 0: 0 7
//! rot 1: 1 2
//! rot 2: 3 4
//! rot 3: 5 6
//! outer 0
//! angle 1 1/2
//! ```
//!
//! `#` starts a comment. `vertices` and `edges` may share a line separated
//! by `;`. Angle lines give the corner keyed by a bounded-face dart an
//! angle of `num/den` times pi.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::exact::Rational;
use crate::map::{Dart, MapError, PlanarMap, RawMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedHeader,
    MalformedLine,
    VertexCountMismatch,
    DartOutOfRange,
    DuplicateDart,
    MissingDart,
    TwinViolation,
    IsolatedVertex,
    Disconnected,
    EulerFailure,
    OuterOutOfRange,
    MissingOuter,
    InvalidAngle,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError { line, kind, message: message.into() }
    }
}

/// A parsed file: the map and any corner angles (coefficients of pi).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapFile {
    pub map: PlanarMap,
    pub angles: BTreeMap<Dart, Rational>,
}

/// Syntactic parse result before structural validation, with the source
/// line of every item so validation failures can be located.
#[derive(Debug, Clone)]
pub struct RawFile {
    pub raw: RawMap,
    pub angles: BTreeMap<Dart, (Rational, usize)>,
    header_line: usize,
    edges_line: usize,
    outer_line: usize,
    dart_lines: BTreeMap<Dart, Vec<usize>>,
    last_line: usize,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

pub fn parse_raw(text: &str) -> Result<RawFile, ParseError> {
    use ParseErrorKind::*;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, MalformedHeader, "empty input"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["pqm", "1"] {
        return Err(ParseError::new(hl, MalformedHeader, format!("expected `pqm 1`, found {header:?}")));
    }
    let mut vertices: Option<(usize, usize)> = None;
    let mut edges: Option<(usize, usize)> = None;
    let mut rotations: BTreeMap<usize, (Vec<Dart>, usize)> = BTreeMap::new();
    let mut outer: Option<(Dart, usize)> = None;
    let mut angles = BTreeMap::new();
    let mut last_line = hl;
    let num = |s: &str, ln: usize| -> Result<usize, ParseError> {
        s.parse::<usize>().map_err(|_| ParseError::new(ln, MalformedLine, format!("expected a non-negative integer, found {s:?}")))
    };
    for (ln, line) in lines {
        last_line = ln;
        for part in line.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let mut words = part.split_whitespace();
            let key = words.next().unwrap_or("");
            match key {
                "vertices" | "edges" => {
                    let rest: Vec<&str> = words.collect();
                    if rest.len() != 1 {
                        return Err(ParseError::new(ln, MalformedHeader, format!("malformed `{key}` line")));
                    }
                    let v = num(rest[0], ln).map_err(|e| ParseError { kind: MalformedHeader, ..e })?;
                    let slot = if key == "vertices" { &mut vertices } else { &mut edges };
                    if slot.is_some() {
                        return Err(ParseError::new(ln, MalformedHeader, format!("repeated `{key}`")));
                    }
                    *slot = Some((v, ln));
                }
                "rot" => {
                    let rest = part[3..].trim();
                    let (v, darts) = rest
                        .split_once(':')
                        .ok_or_else(|| ParseError::new(ln, MalformedLine, "expected `rot <v>: <darts>`"))?;
                    let v = num(v.trim(), ln)?;
                    let darts = darts.split_whitespace().map(|d| num(d, ln)).collect::<Result<Vec<_>, _>>()?;
                    if rotations.insert(v, (darts, ln)).is_some() {
                        return Err(ParseError::new(ln, MalformedLine, format!("vertex {v} has two rotation lines")));
                    }
                }
                "outer" => {
                    let rest: Vec<&str> = words.collect();
                    if rest.len() != 1 || outer.is_some() {
                        return Err(ParseError::new(ln, MalformedLine, "malformed or repeated `outer` line"));
                    }
                    outer = Some((num(rest[0], ln)?, ln));
                }
                "angle" => {
                    let rest: Vec<&str> = words.collect();
                    if rest.len() != 2 {
                        return Err(ParseError::new(ln, MalformedLine, "expected `angle <dart> <num>/<den>`"));
                    }
                    let d = num(rest[0], ln)?;
                    let a: Rational = rest[1].parse().map_err(|_| ParseError::new(ln, InvalidAngle, format!("bad angle {:?}", rest[1])))?;
                    if a.is_negative() {
                        return Err(ParseError::new(ln, InvalidAngle, "angles must be non-negative"));
                    }
                    if angles.insert(d, (a, ln)).is_some() {
                        return Err(ParseError::new(ln, InvalidAngle, format!("corner {d} has two angles")));
                    }
                }
                _ => return Err(ParseError::new(ln, MalformedLine, format!("unknown directive {key:?}"))),
            }
        }
    }
    let (nv, vl) = vertices.ok_or_else(|| ParseError::new(hl, MalformedHeader, "missing `vertices`"))?;
    let (ne, el) = edges.ok_or_else(|| ParseError::new(hl, MalformedHeader, "missing `edges`"))?;
    if rotations.len() != nv || rotations.keys().enumerate().any(|(i, &v)| i != v) {
        return Err(ParseError::new(vl, VertexCountMismatch, format!("expected rotation lines for vertices 0..{nv}")));
    }
    let mut dart_lines: BTreeMap<Dart, Vec<usize>> = BTreeMap::new();
    for (darts, ln) in rotations.values() {
        for &d in darts {
            dart_lines.entry(d).or_default().push(*ln);
        }
    }
    Ok(RawFile {
        raw: RawMap { edges: ne, rotations: rotations.into_values().map(|(d, _)| d).collect(), outer: outer.map(|o| o.0) },
        angles,
        header_line: vl.min(el),
        edges_line: el,
        outer_line: outer.map(|o| o.1).unwrap_or(last_line),
        dart_lines,
        last_line,
    })
}

impl RawFile {
    fn locate(&self, err: &MapError) -> ParseError {
        use ParseErrorKind::*;
        let first = |d: &Dart| self.dart_lines.get(d).and_then(|v| v.first()).copied().unwrap_or(self.edges_line);
        let (line, kind) = match err {
            MapError::NoVertices => (self.header_line, VertexCountMismatch),
            MapError::OddDartCount(_) => (self.edges_line, TwinViolation),
            MapError::DartOutOfRange { dart, .. } => (first(dart), DartOutOfRange),
            MapError::DuplicateDart(d) => {
                (self.dart_lines.get(d).and_then(|v| v.get(1)).copied().unwrap_or(self.edges_line), DuplicateDart)
            }
            MapError::MissingDart(_) => (self.edges_line, MissingDart),
            MapError::TwinViolation(d) => (first(d), TwinViolation),
            MapError::IsolatedVertex(_) => (self.header_line, IsolatedVertex),
            MapError::Disconnected => (self.header_line, Disconnected),
            MapError::EulerFailure { .. } => (self.header_line, EulerFailure),
            MapError::OuterOutOfRange(_) => (self.outer_line, OuterOutOfRange),
            MapError::MissingOuter => (self.last_line, MissingOuter),
        };
        ParseError::new(line, kind, err.to_string())
    }

    pub fn into_file(self) -> Result<MapFile, ParseError> {
        if let Some(e) = self.raw.errors().first() {
            return Err(self.locate(e));
        }
        let map = PlanarMap::from_raw(self.raw.clone()).map_err(|e| self.locate(&e))?;
        let mut angles = BTreeMap::new();
        for (&d, (a, ln)) in &self.angles {
            if d >= map.dart_count() || map.face_of(d).is_none() {
                return Err(ParseError::new(*ln, ParseErrorKind::InvalidAngle, format!("dart {d} is not a corner of a bounded face")));
            }
            angles.insert(d, a.clone());
        }
        Ok(MapFile { map, angles })
    }
}

pub fn parse(text: &str) -> Result<MapFile, ParseError> {
    parse_raw(text)?.into_file()
}

pub fn parse_map(text: &str) -> Result<PlanarMap, ParseError> {
    Ok(parse(text)?.map)
}

/// Canonical text: vertices ascending, each rotation from its minimal dart.
pub fn serialize(m: &PlanarMap) -> String {
    serialize_with_angles(m, &BTreeMap::new())
}

pub fn serialize_with_angles(m: &PlanarMap, angles: &BTreeMap<Dart, Rational>) -> String {
    let mut s = String::new();
    writeln!(s, "pqm 1").unwrap();
    writeln!(s, "vertices {}", m.vertex_count()).unwrap();
    writeln!(s, "edges {}", m.edge_count()).unwrap();
    for v in 0..m.vertex_count() {
        let darts: Vec<String> = m.rotation(v).iter().map(|d| d.to_string()).collect();
        if darts.is_empty() {
            writeln!(s, "rot {v}:").unwrap();
        } else {
            writeln!(s, "rot {v}: {}", darts.join(" ")).unwrap();
        }
    }
    if let Some(o) = m.outer_dart() {
        writeln!(s, "outer {o}").unwrap();
    }
    for (d, a) in angles {
        writeln!(s, "angle {d} {a}").unwrap();
    }
    s
}

/// Appends `# key: value` comment lines, keeping the text a valid file.
pub fn append_report(text: &mut String, report: &[(String, String)]) {
    for (k, v) in report {
        writeln!(text, "# {k}: {v}").unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "pqm 1\nvertices 4\nedges 4\nrot 0: 0 7\nrot 1: 1 2\nrot 2: 3 4\nrot 3: 5 6\nouter 0\n";

    #[test]
    fn square_round_trip() {
        let f = parse(SQUARE).unwrap();
        assert_eq!(f.map.dart_count(), 8);
        assert_eq!(f.map.face_count(), 1);
        let text = serialize(&f.map);
        assert_eq!(text, SQUARE);
        assert_eq!(parse_map(&text).unwrap(), f.map);
    }

    #[test]
    fn twin_violation_has_distinct_kind() {
        // dart 3 is listed but its twin 2 is not; dart 2's slot holds nothing
        let text = "pqm 1\nvertices 2\nedges 2\nrot 0: 0 3\nrot 1: 1\nouter 0\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::TwinViolation);
        assert_eq!(e.line, 4);
        assert!(e.message.contains("twin involution violated"));
    }

    #[test]
    fn error_kinds_are_distinct() {
        let cases = [
            ("pqm 2\n", ParseErrorKind::MalformedHeader, 1),
            ("pqm 1\nvertices 1\nedges 1\nrot 0: 0 1 1\nouter 0\n", ParseErrorKind::DuplicateDart, 4),
            ("pqm 1\nvertices 1\nedges 2\nrot 0: 0 1\nouter 0\n", ParseErrorKind::MissingDart, 3),
            ("pqm 1\nvertices 1\nedges 1\nrot 0: 0 1\nouter 5\n", ParseErrorKind::OuterOutOfRange, 5),
            ("pqm 1\nvertices 4\nedges 2\nrot 0: 0\nrot 1: 1\nrot 2: 2\nrot 3: 3\nouter 0\n", ParseErrorKind::Disconnected, 2),
            ("pqm 1\nvertices 1\nedges 2\nrot 0: 0 2 1 3\nouter 0\n", ParseErrorKind::EulerFailure, 2),
        ];
        for (text, kind, line) in cases {
            let e = parse(text).unwrap_err();
            assert_eq!((e.kind, e.line), (kind, line), "{text}");
        }
    }

    #[test]
    fn comments_and_combined_header() {
        let text = "# a square\npqm 1\nvertices 4 ; edges 4\nrot 0: 0 7 # corner\nrot 1: 1 2\nrot 2: 3 4\nrot 3: 5 6\nouter 0\nangle 1 1/2\n";
        let f = parse(text).unwrap();
        assert_eq!(f.angles.len(), 1);
        assert_eq!(f.angles[&1], Rational::new(1, 2));
    }

    #[test]
    fn angle_on_outer_corner_rejected() {
        let text = format!("{SQUARE}angle 0 1/2\n");
        assert_eq!(parse(&text).unwrap_err().kind, ParseErrorKind::InvalidAngle);
    }
}
