//! Text formats.
//!
//! Edge lists: a header line `n m`, then `m` lines `u v`, one per arc
//! `u -> v`. Lines starting with `#` and blank lines are ignored. Output is
//! sorted so that `serialize_edge_list(parse_edge_list(x)?)` is a fixed
//! point.
//!
//! A factorization is written as the factor count, then for each factor a
//! `---` line followed by its edge list, then a `---` line followed by one
//! line `v c0 c1 ...` per vertex. The JSON mirror has the shape
//! `{n, arcs, factors: [{n, arcs}], coords: {vertex: [...]}}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::digraph::{Arc, Digraph, Vertex};
use crate::error::{Error, FormatError, Result};
use crate::factorization::Factorization;
use crate::relations::QuotientWithMultiplicity;

pub const SEPARATOR: &str = "---";

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn parse_numbers(line: usize, text: &str, expected: usize) -> Result<Vec<usize>, FormatError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != expected {
        return Err(syntax(line, format!("expected {expected} integers, found {}", fields.len())));
    }
    fields.iter().map(|f| f.parse().map_err(|_| syntax(line, format!("`{f}` is not a non-negative integer")))).collect()
}

/// Lines with their 1-based numbers, comments and blanks dropped.
fn content_lines(text: &str, first_line: usize) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(move |(i, l)| (i + first_line, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, FormatError> {
    parse_edge_list_at(text, 1)
}

fn parse_edge_list_at(text: &str, first_line: usize) -> Result<Digraph, FormatError> {
    let mut lines = content_lines(text, first_line);
    let (header_line, header) = lines.next().ok_or_else(|| syntax(first_line, "missing `n m` header"))?;
    let nm = parse_numbers(header_line, header, 2)?;
    let (n, m) = (nm[0], nm[1]);
    let mut arcs = BTreeSet::new();
    let mut found = 0;
    for (line, body) in lines {
        let uv = parse_numbers(line, body, 2)?;
        let (u, v) = (uv[0], uv[1]);
        if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
            return Err(FormatError::VertexOutOfRange { line, vertex, n });
        }
        if u == v {
            return Err(FormatError::LoopArc { line, vertex: u });
        }
        if !arcs.insert((u, v)) {
            return Err(syntax(line, format!("duplicate arc {u} {v}")));
        }
        found += 1;
    }
    if found != m {
        return Err(FormatError::ArityMismatch { declared: m, found });
    }
    Ok(Digraph::new(n, arcs).expect("arcs validated above"))
}

pub fn serialize_edge_list(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.arc_count());
    for (u, v) in g.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Splits on lines consisting of `---`; yields each section with the line
/// number of its first line.
fn sections(text: &str) -> Vec<(usize, String)> {
    let mut out = vec![(1, String::new())];
    for (i, line) in text.lines().enumerate() {
        if line.trim() == SEPARATOR {
            out.push((i + 2, String::new()));
        } else {
            let current = &mut out.last_mut().unwrap().1;
            current.push_str(line);
            current.push('\n');
        }
    }
    out
}

/// Several edge lists separated by `---` lines.
pub fn parse_edge_lists(text: &str) -> Result<Vec<Digraph>, FormatError> {
    sections(text).iter().map(|(first, body)| parse_edge_list_at(body, *first)).collect()
}

pub fn serialize_edge_lists(graphs: &[Digraph]) -> String {
    graphs.iter().map(serialize_edge_list).collect::<Vec<_>>().join(&format!("{SEPARATOR}\n"))
}

/// Edge list followed by `# coord v c0 c1 ...` comment lines.
pub fn serialize_with_coords(g: &Digraph, coords: &[Vec<Vertex>]) -> String {
    let mut out = serialize_edge_list(g);
    for (v, c) in coords.iter().enumerate() {
        writeln!(out, "# coord {v} {}", join(c)).unwrap();
    }
    out
}

/// Quotient edge list followed by `# mult class size` and
/// `# class class members...` comment lines.
pub fn serialize_quotient(q: &QuotientWithMultiplicity) -> String {
    let mut out = serialize_edge_list(&q.quotient);
    for (c, m) in q.mult.iter().enumerate() {
        writeln!(out, "# mult {c} {m}").unwrap();
    }
    for (c, members) in q.partition.classes.iter().enumerate() {
        writeln!(out, "# class {c} {}", join(members)).unwrap();
    }
    out
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn serialize_factorization(f: &Factorization) -> String {
    let mut out = format!("{}\n", f.factors.len());
    for factor in &f.factors {
        writeln!(out, "{SEPARATOR}").unwrap();
        out.push_str(&serialize_edge_list(factor));
    }
    writeln!(out, "{SEPARATOR}").unwrap();
    for (v, c) in f.coords.iter().enumerate() {
        writeln!(out, "{v} {}", join(c)).unwrap();
    }
    out
}

pub fn parse_factorization(text: &str) -> Result<Factorization, FormatError> {
    let parts = sections(text);
    let (count_line, count_text) = &parts[0];
    let mut count_lines = content_lines(count_text, *count_line);
    let (line, count) = count_lines.next().ok_or_else(|| syntax(*count_line, "missing factor count"))?;
    let k = parse_numbers(line, count, 1)?[0];
    if let Some((line, _)) = count_lines.next() {
        return Err(syntax(line, "unexpected content after the factor count"));
    }
    if parts.len() != k + 2 {
        return Err(syntax(line, format!("declared {k} factors but found {} sections", parts.len().saturating_sub(2))));
    }
    let factors =
        parts[1..=k].iter().map(|(first, body)| parse_edge_list_at(body, *first)).collect::<Result<Vec<_>, _>>()?;
    let (coord_line, coord_text) = &parts[k + 1];
    let mut coords = Vec::new();
    for (line, body) in content_lines(coord_text, *coord_line) {
        let values = parse_numbers(line, body, k + 1)?;
        if values[0] != coords.len() {
            return Err(syntax(line, format!("expected coordinates of vertex {}", coords.len())));
        }
        for (i, (&x, factor)) in values[1..].iter().zip(&factors).enumerate() {
            if x >= factor.vertex_count() {
                return Err(syntax(line, format!("coordinate {x} out of range for factor {i}")));
            }
        }
        coords.push(values[1..].to_vec());
    }
    Ok(Factorization { factors, coords })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub arcs: Vec<Arc>,
}

impl From<&Digraph> for GraphJson {
    fn from(g: &Digraph) -> Self {
        GraphJson { n: g.vertex_count(), arcs: g.arcs().collect() }
    }
}

impl TryFrom<&GraphJson> for Digraph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Self> {
        Digraph::new(j.n, j.arcs.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub n: usize,
    pub arcs: Vec<Arc>,
    pub factors: Vec<GraphJson>,
    pub coords: BTreeMap<usize, Vec<Vertex>>,
}

impl FactorizationJson {
    pub fn new(g: &Digraph, f: &Factorization) -> Self {
        FactorizationJson {
            n: g.vertex_count(),
            arcs: g.arcs().collect(),
            factors: f.factors.iter().map(GraphJson::from).collect(),
            coords: f.coords.iter().cloned().enumerate().collect(),
        }
    }

    pub fn to_factorization(&self) -> Result<Factorization> {
        let factors = self.factors.iter().map(Digraph::try_from).collect::<Result<Vec<_>>>()?;
        let coords: Vec<Vec<Vertex>> = self.coords.values().cloned().collect();
        if self.coords.keys().copied().ne(0..self.n) {
            return Err(Error::Internal("coordinate map must cover vertices 0..n".into()));
        }
        Ok(Factorization { factors, coords })
    }
}

pub fn factorization_to_json(g: &Digraph, f: &Factorization) -> String {
    serde_json::to_string_pretty(&FactorizationJson::new(g, f)).expect("plain data serializes") + "\n"
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DotOptions {
    /// Product coordinates; labels nodes and colors arcs by the coordinate
    /// they change (gray when several change).
    pub coords: Option<Vec<Vec<Vertex>>>,
    /// Arcs drawn dashed.
    pub dashed: BTreeSet<Arc>,
}

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "teal", "magenta"];

pub fn export_dot(g: &Digraph, options: &DotOptions) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        match &options.coords {
            Some(coords) => writeln!(
                out,
                "  {v} [label=\"{v} ({})\"];",
                coords[v].iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
            .unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.arcs() {
        let mut attrs = Vec::new();
        if let Some(coords) = &options.coords {
            let changed: Vec<usize> = (0..coords[u].len()).filter(|&i| coords[u][i] != coords[v][i]).collect();
            let color = match changed.as_slice() {
                [i] => PALETTE[i % PALETTE.len()],
                _ => "gray",
            };
            attrs.push(format!("color={color}"));
        }
        if options.dashed.contains(&(u, v)) {
            attrs.push("style=dashed".to_string());
        }
        if attrs.is_empty() {
            writeln!(out, "  {u} -> {v};").unwrap();
        } else {
            writeln!(out, "  {u} -> {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::strong_product;
    use crate::skeleton::cartesian_skeleton;

    #[test]
    fn parses_a_single_arc() {
        assert_eq!(parse_edge_list("2 1\n0 1\n").unwrap(), Digraph::directed_path(2));
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(parse_edge_list("2 1\n0 0\n"), Err(FormatError::LoopArc { line: 2, vertex: 0 }));
        assert_eq!(
            parse_edge_list("# c\n2 1\n\n0 5\n"),
            Err(FormatError::VertexOutOfRange { line: 4, vertex: 5, n: 2 })
        );
        assert_eq!(parse_edge_list("3 2\n0 1\n"), Err(FormatError::ArityMismatch { declared: 2, found: 1 }));
        assert!(matches!(parse_edge_list("2 x\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_edge_list("2 2\n0 1\n0 1\n"), Err(FormatError::Syntax { line: 3, .. })));
        assert!(matches!(parse_edge_list(""), Err(FormatError::Syntax { .. })));
    }

    #[test]
    fn serialization_normalizes() {
        let text = "# comment\n3 3\n2 0\n  0 1\n1 2\n";
        let g = parse_edge_list(text).unwrap();
        let normal = serialize_edge_list(&g);
        assert_eq!(normal, "3 3\n0 1\n1 2\n2 0\n");
        assert_eq!(serialize_edge_list(&parse_edge_list(&normal).unwrap()), normal);
    }

    #[test]
    fn multi_section_round_trip() {
        let graphs = vec![Digraph::directed_path(2), Digraph::directed_cycle(3)];
        let text = serialize_edge_lists(&graphs);
        assert_eq!(parse_edge_lists(&text).unwrap(), graphs);
        let bad = "2 1\n0 1\n---\n2 1\n1 1\n";
        assert_eq!(parse_edge_lists(bad), Err(FormatError::LoopArc { line: 5, vertex: 1 }));
    }

    #[test]
    fn factorization_round_trips() {
        let cg = strong_product(&[Digraph::directed_path(2), Digraph::directed_cycle(3)]).unwrap();
        let f = Factorization { factors: cg.factors().to_vec(), coords: cg.all_coords().to_vec() };
        let text = serialize_factorization(&f);
        assert!(text.starts_with("2\n---\n2 1\n0 1\n---\n3 3\n"));
        assert!(text.ends_with("---\n0 0 0\n1 0 1\n2 0 2\n3 1 0\n4 1 1\n5 1 2\n"));
        assert_eq!(parse_factorization(&text).unwrap(), f);
        let json = factorization_to_json(cg.graph(), &f);
        let back: FactorizationJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_factorization().unwrap(), f);
        assert_eq!(back.n, 6);
    }

    #[test]
    fn factorization_parse_errors() {
        assert!(parse_factorization("2\n---\n1 0\n---\n0 0\n").is_err());
        assert!(parse_factorization("1\n---\n2 1\n0 1\n---\n0 0\n1 3\n").is_err());
    }

    #[test]
    fn dot_output() {
        let p2 = Digraph::directed_path(2);
        assert_eq!(export_dot(&p2, &DotOptions::default()), "digraph G {\n  0;\n  1;\n  0 -> 1;\n}\n");
        let cg = strong_product(&[p2.clone(), p2]).unwrap();
        let sk = cartesian_skeleton(cg.graph()).unwrap();
        let options =
            DotOptions { coords: Some(cg.all_coords().to_vec()), dashed: sk.removed_arcs().into_iter().collect() };
        let dot = export_dot(cg.graph(), &options);
        assert!(dot.contains("  0 -> 3 [color=gray, style=dashed];"));
        assert!(dot.contains("  0 -> 1 [color=blue];"));
        assert_eq!(dot, export_dot(cg.graph(), &options));
    }
}
