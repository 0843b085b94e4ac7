//! Line-oriented text formats.
//!
//! `.scx` holds one complex:
//!
//! ```text
//! # comment
//! name EX_K
//! v a' b' c' d'
//! f a' b' c'
//! f c' d'
//! ```
//!
//! `v` lines declare vertices (only needed for isolated ones), `f` lines list generating faces.
//! Maps use one `m <source> <target>` line per source vertex.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::maps::VertexMap;

pub fn parse_scx(text: &str) -> Result<Complex> {
    let mut name = None;
    let mut faces: Vec<Vec<&str>> = Vec::new();
    let mut face_lines = Vec::new();
    let mut declared: Vec<&str> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        match keyword {
            "name" => {
                let rest = line["name".len()..].trim();
                if rest.is_empty() {
                    return Err(Error::Parse { line: line_no, message: "name line without text".into() });
                }
                name = Some(rest.to_string());
            }
            "v" => declared.extend(tokens),
            "f" => {
                let face: Vec<&str> = tokens.collect();
                if face.is_empty() {
                    return Err(Error::Parse { line: line_no, message: "facet line lists no vertices".into() });
                }
                faces.push(face);
                face_lines.push(line_no);
            }
            other => {
                return Err(Error::Parse { line: line_no, message: format!("unknown keyword {other:?}") });
            }
        }
    }
    // vertices from `v` lines join the face vertices; face vertices need no declaration
    let mut all: Vec<&str> = faces.iter().flatten().copied().collect();
    all.extend(&declared);
    all.sort_unstable();
    all.dedup();
    let complex = Complex::build(&faces, Some(&all[..])).map_err(|e| match e {
        Error::EmptyFace { index } => Error::Parse { line: face_lines[index], message: e.to_string() },
        other => other,
    })?;
    Ok(match name {
        Some(n) => complex.with_name(n),
        None => complex,
    })
}

/// Canonical text: optional name, one `v` line with every vertex, then one `f` line per facet.
pub fn serialize_scx(c: &Complex) -> String {
    let mut out = String::new();
    if let Some(n) = c.name() {
        out.push_str(&format!("name {n}\n"));
    }
    if !c.is_empty() {
        out.push_str(&format!("v {}\n", c.labels().join(" ")));
    }
    for f in c.facets() {
        out.push_str(&format!("f {}\n", c.names(*f).join(" ")));
    }
    out
}

pub fn parse_map(text: &str, source: &Complex, target: &Complex) -> Result<VertexMap> {
    let mut pairs: BTreeMap<String, String> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["m", from, to] => {
                if pairs.insert(from.to_string(), to.to_string()).is_some() {
                    return Err(Error::Parse { line: i + 1, message: format!("vertex {from:?} mapped twice") });
                }
            }
            _ => return Err(Error::Parse { line: i + 1, message: "expected `m <source> <target>`".into() }),
        }
    }
    let pairs: Vec<(String, String)> = pairs.into_iter().collect();
    match VertexMap::from_pairs(source.clone(), target.clone(), &pairs) {
        Err(Error::UnmappedVertex { label }) => {
            Err(Error::Parse { line: 0, message: format!("source vertex {label:?} is not mapped") })
        }
        other => other,
    }
}

pub fn serialize_map(m: &VertexMap) -> String {
    m.pairs().iter().map(|(a, b)| format!("m {a} {b}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_absorbs_and_orders() {
        let c = parse_scx("f a b c\nf a b").unwrap();
        assert_eq!(c.eta(), 1);
        assert_eq!(c.labels(), &["a", "b", "c"]);
    }

    #[test]
    fn empty_facet_line_is_a_parse_error() {
        match parse_scx("# header\nf a b\nf\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_scx("x a b"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn serialize_ex_k() {
        let k = parse_scx("f c' d'\nf a' b' c'\n").unwrap();
        assert_eq!(serialize_scx(&k), "v a' b' c' d'\nf a' b' c'\nf c' d'\n");
    }

    #[test]
    fn isolated_vertices_and_names_round_trip() {
        let c = parse_scx("name demo\nv z\nf 1 2\n").unwrap();
        assert_eq!(c.name(), Some("demo"));
        let back = parse_scx(&serialize_scx(&c)).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.name(), Some("demo"));
        assert_eq!(back.eta(), 2);
    }

    #[test]
    fn map_format() {
        let l = parse_scx("f a b").unwrap();
        let k = parse_scx("f x y").unwrap();
        let m = parse_map("m a y\nm b x\n", &l, &k).unwrap();
        assert_eq!(serialize_map(&m), "m a y\nm b x\n");
        assert!(parse_map("m a y\n", &l, &k).is_err());
        assert!(parse_map("m a q\nm b x\n", &l, &k).is_err());
    }
}
