//! Text formats: the edge-list graph format, peak-set strings, and result output.
//!
//! Graph files look like
//!
//! ```text
//! # name: figure-2
//! # any other comment
//! n 4
//! e 1 2
//! e 1 3
//! e 2 3
//! e 3 4
//! ```
//!
//! Vertices are 1-based. The `n` header must come before any edge line.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::EnumerationBatch;
use crate::graph::{Graph, GraphError, VertexSet};
use crate::oracle::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("`n` header given twice")]
    DuplicateHeader,
    #[error("edge line before the `n` header")]
    EdgeBeforeHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("not a positive integer: {0:?}")]
    BadNumber(String),
    #[error("vertex {vertex} is out of range 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// A graph file as written, before it becomes a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub name: Option<String>,
    pub comments: Vec<String>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph, name: Option<String>) -> Self {
        GraphDocument {
            n: g.n(),
            edges: g.edges(),
            name,
            comments: Vec::new(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, &self.edges)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("# name: {name}\n"));
        }
        for c in &self.comments {
            out.push_str(&format!("# {c}\n"));
        }
        out.push_str(&format!("n {}\n", self.n));
        for (u, v) in &self.edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

/// Tokens of a line with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| ParseError::at(line, col, ParseErrorKind::BadNumber(tok.to_string())))
}

/// Parses the edge-list format, checking every edge as it is read.
pub fn parse_document(text: &str) -> Result<GraphDocument, ParseError> {
    let mut doc = GraphDocument::default();
    let mut header = false;
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let comment = comment.trim();
            match comment.strip_prefix("name:") {
                Some(name) if doc.name.is_none() => doc.name = Some(name.trim().to_string()),
                _ => doc.comments.push(comment.to_string()),
            }
            continue;
        }
        let toks = tokens(raw);
        let (col, kw) = toks[0];
        match kw {
            "n" => {
                if header {
                    return Err(ParseError::at(line, col, ParseErrorKind::DuplicateHeader));
                }
                if toks.len() != 2 {
                    return Err(ParseError::at(
                        line,
                        col,
                        ParseErrorKind::Malformed("expected `n <count>`".into()),
                    ));
                }
                doc.n = number(line, toks[1])?;
                if doc.n > crate::graph::MAX_VERTICES {
                    return Err(ParseError::at(
                        line,
                        toks[1].0,
                        GraphError::TooManyVertices(doc.n).into(),
                    ));
                }
                header = true;
            }
            "e" => {
                if !header {
                    return Err(ParseError::at(line, col, ParseErrorKind::EdgeBeforeHeader));
                }
                if toks.len() != 3 {
                    return Err(ParseError::at(
                        line,
                        col,
                        ParseErrorKind::Malformed("expected `e <u> <v>`".into()),
                    ));
                }
                let u = number(line, toks[1])?;
                let v = number(line, toks[2])?;
                for (tok, x) in [(toks[1], u), (toks[2], v)] {
                    if x > doc.n {
                        return Err(ParseError::at(
                            line,
                            tok.0,
                            ParseErrorKind::OutOfRange {
                                vertex: x,
                                n: doc.n,
                            },
                        ));
                    }
                }
                if u == v {
                    return Err(ParseError::at(
                        line,
                        toks[2].0,
                        GraphError::SelfLoop(u).into(),
                    ));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(ParseError::at(
                        line,
                        col,
                        GraphError::DuplicateEdge(u.min(v), u.max(v)).into(),
                    ));
                }
                doc.edges.push((u, v));
            }
            other => {
                return Err(ParseError::at(
                    line,
                    col,
                    ParseErrorKind::Malformed(format!("unknown line type {other:?}")),
                ));
            }
        }
    }
    if !header {
        return Err(ParseError::at(
            last_line.max(1),
            1,
            ParseErrorKind::MissingHeader,
        ));
    }
    Ok(doc)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let doc = parse_document(text)?;
    doc.to_graph().map_err(|e| ParseError::at(1, 1, e.into()))
}

/// Parses `"1,3"` into `{1,3}`; the empty string is `∅`.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet, ParseError> {
    let mut set = VertexSet::EMPTY;
    if text.trim().is_empty() {
        return Ok(set);
    }
    let mut col = 1;
    for part in text.split(',') {
        let lead = part.len() - part.trim_start().len();
        let tok = part.trim();
        let v = number(1, (col + lead, tok))?;
        if v > n {
            return Err(ParseError::at(
                1,
                col + lead,
                ParseErrorKind::OutOfRange { vertex: v, n },
            ));
        }
        if set.contains(v) {
            return Err(ParseError::at(
                1,
                col + lead,
                ParseErrorKind::DuplicateVertex(v),
            ));
        }
        set.insert(v);
        col += part.len() + 1;
    }
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown output format {0:?} (expected json, csv or text)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, UnknownFormat> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Something the tool can print.
#[derive(Debug, Clone, Copy)]
pub enum Payload<'a> {
    Count {
        graph: &'a Graph,
        peaks: VertexSet,
        count: &'a BigUint,
    },
    Enumeration {
        graph: &'a Graph,
        peaks: VertexSet,
        batch: &'a EnumerationBatch,
    },
    Distribution {
        graph: &'a Graph,
        entries: &'a [(VertexSet, BigUint)],
    },
    Verification {
        reports: &'a [(String, ValidationReport)],
    },
}

#[derive(Serialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl GraphJson {
    fn new(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

#[derive(Serialize)]
struct CountJson {
    graph: GraphJson,
    peaks: Vec<usize>,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labelings: Option<Vec<Vec<usize>>>,
    truncated: bool,
}

#[derive(Serialize)]
struct EntryJson {
    peaks: Vec<usize>,
    count: String,
}

#[derive(Serialize)]
struct DistributionJson {
    graph: GraphJson,
    distribution: Vec<EntryJson>,
    total: String,
}

#[derive(Serialize)]
struct NamedReport<'a> {
    name: &'a str,
    #[serde(flatten)]
    report: &'a ValidationReport,
}

#[derive(Serialize)]
struct VerificationJson<'a> {
    graphs: Vec<NamedReport<'a>>,
    mismatches: usize,
    ok: bool,
}

fn join_peaks(s: VertexSet, sep: &str) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Renders a payload. JSON output is one line, with fields in a fixed order.
pub fn render_results(payload: &Payload<'_>, format: Format) -> String {
    match (*payload, format) {
        (
            Payload::Count {
                graph,
                peaks,
                count,
            },
            Format::Json,
        ) => json_line(&CountJson {
            graph: GraphJson::new(graph),
            peaks: peaks.to_vec(),
            count: count.to_string(),
            labelings: None,
            truncated: false,
        }),
        (Payload::Count { peaks, count, .. }, Format::Csv) => {
            format!("peaks,count\n{},{count}\n", join_peaks(peaks, " "))
        }
        (Payload::Count { count, .. }, Format::Text) => format!("{count}\n"),

        (
            Payload::Enumeration {
                graph,
                peaks,
                batch,
            },
            Format::Json,
        ) => json_line(&CountJson {
            graph: GraphJson::new(graph),
            peaks: peaks.to_vec(),
            count: batch.labelings.len().to_string(),
            labelings: Some(batch.labelings.iter().map(|l| l.to_vec()).collect()),
            truncated: batch.truncated,
        }),
        (Payload::Enumeration { batch, .. }, Format::Csv) => batch
            .labelings
            .iter()
            .map(|l| format!("{}\n", l.to_string().replace(' ', ",")))
            .collect(),
        (Payload::Enumeration { batch, .. }, Format::Text) => {
            let mut out: String = batch.labelings.iter().map(|l| format!("{l}\n")).collect();
            if batch.truncated {
                out.push_str(&format!(
                    "# truncated after {} labelings\n",
                    batch.labelings.len()
                ));
            }
            out
        }

        (Payload::Distribution { graph, entries }, Format::Json) => json_line(&DistributionJson {
            graph: GraphJson::new(graph),
            distribution: entries
                .iter()
                .map(|(s, c)| EntryJson {
                    peaks: s.to_vec(),
                    count: c.to_string(),
                })
                .collect(),
            total: entries.iter().map(|(_, c)| c).sum::<BigUint>().to_string(),
        }),
        (Payload::Distribution { entries, .. }, Format::Csv) => {
            let mut out = String::from("peaks,count\n");
            for (s, c) in entries {
                out.push_str(&format!("{},{c}\n", join_peaks(*s, " ")));
            }
            out
        }
        (Payload::Distribution { entries, .. }, Format::Text) => {
            entries.iter().map(|(s, c)| format!("{s} {c}\n")).collect()
        }

        (Payload::Verification { reports }, Format::Json) => {
            let mismatches = reports.iter().map(|(_, r)| r.mismatches.len()).sum();
            json_line(&VerificationJson {
                graphs: reports
                    .iter()
                    .map(|(name, report)| NamedReport { name, report })
                    .collect(),
                mismatches,
                ok: mismatches == 0,
            })
        }
        (Payload::Verification { reports }, Format::Csv) => {
            let mut out = String::from("graph,n,subsets,admissible,labelings,mismatches\n");
            for (name, r) in reports {
                out.push_str(&format!(
                    "{name},{},{},{},{},{}\n",
                    r.n,
                    r.subsets_checked,
                    r.admissible_sets,
                    r.labelings,
                    r.mismatches.len()
                ));
            }
            out
        }
        (Payload::Verification { reports }, Format::Text) => {
            let mut out = String::new();
            let mut bad = 0;
            for (name, r) in reports {
                let status = if r.ok() { "ok  " } else { "FAIL" };
                out.push_str(&format!(
                    "{status} {name}: n={} subsets={} admissible={} labelings={}\n",
                    r.n, r.subsets_checked, r.admissible_sets, r.labelings
                ));
                for m in &r.mismatches {
                    bad += 1;
                    out.push_str(&format!(
                        "     peaks {:?}: oracle {} enumerated {} counted {} memo {}{}\n",
                        m.peaks,
                        m.oracle,
                        m.enumerated,
                        m.counted,
                        m.counted_memo,
                        if m.set_differs { " (sets differ)" } else { "" }
                    ));
                }
            }
            out.push_str(&format!(
                "{} graphs checked, {bad} mismatches\n",
                reports.len()
            ));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_labelings_par;
    use crate::family::Family;

    const FIG2: &str = "n 4\ne 1 2\ne 1 3\ne 2 3\ne 3 4\n";

    #[test]
    fn parses_figure_two() {
        let g = parse_graph(FIG2).unwrap();
        assert_eq!(g, Graph::new(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap());
        assert_eq!(parse_graph("n 1\n").unwrap().n(), 1);
    }

    #[test]
    fn reports_error_positions() {
        let err = parse_graph("n 3\ne 1 4\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        assert!(matches!(
            err.kind,
            ParseErrorKind::OutOfRange { vertex: 4, n: 3 }
        ));

        let err = parse_graph("# nothing\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingHeader);
        let err = parse_graph("e 1 2\nn 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EdgeBeforeHeader);
        let err = parse_graph("n 3\ne 2 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Graph(GraphError::SelfLoop(2)));
        let err = parse_graph("n 3\ne 1 2\n  e 2 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        assert_eq!(
            err.kind,
            ParseErrorKind::Graph(GraphError::DuplicateEdge(1, 2))
        );
        let err = parse_graph("n 3\ne 1 x\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadNumber("x".into()));
        assert!(parse_graph("n 3\nq 1 2\n").is_err());
        assert!(parse_graph("n 3\nn 3\n").is_err());
        assert!(parse_graph("n 0\n").is_err());
    }

    #[test]
    fn document_metadata_survives() {
        let text = "# name: fig2\n# from the worked example\nn 4\ne 1 2\ne 1 3\ne 2 3\ne 3 4\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.name.as_deref(), Some("fig2"));
        assert_eq!(doc.comments, vec!["from the worked example"]);
        assert_eq!(doc.render(), text);
    }

    #[test]
    fn vertex_sets() {
        assert_eq!(parse_vertex_set("1,3", 5).unwrap(), VertexSet::from([1, 3]));
        assert_eq!(
            parse_vertex_set(" 1, 3 ", 5).unwrap(),
            VertexSet::from([1, 3])
        );
        assert_eq!(parse_vertex_set("", 5).unwrap(), VertexSet::EMPTY);
        let err = parse_vertex_set("2,2", 5).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateVertex(2));
        assert_eq!(err.column, 3);
        assert!(parse_vertex_set("1,a", 5).is_err());
        assert!(parse_vertex_set("6", 5).is_err());
        assert!(parse_vertex_set("0", 5).is_err());
    }

    #[test]
    fn count_json() {
        let c5 = Family::Cycle(5).build().unwrap();
        let count = BigUint::from(16u32);
        let out = render_results(
            &Payload::Count {
                graph: &c5,
                peaks: VertexSet::from([1, 3]),
                count: &count,
            },
            Format::Json,
        );
        assert_eq!(
            out,
            "{\"graph\":{\"n\":5,\"edges\":[[1,2],[1,5],[2,3],[3,4],[4,5]]},\"peaks\":[1,3],\"count\":\"16\",\"truncated\":false}\n"
        );
        let text = render_results(
            &Payload::Count {
                graph: &c5,
                peaks: VertexSet::from([1, 3]),
                count: &count,
            },
            Format::Text,
        );
        assert_eq!(text, "16\n");
    }

    #[test]
    fn enumeration_outputs() {
        let g = parse_graph(FIG2).unwrap();
        let batch = enumerate_labelings_par(&g, VertexSet::from([1]), None, 1, None).unwrap();
        let payload = Payload::Enumeration {
            graph: &g,
            peaks: VertexSet::from([1]),
            batch: &batch,
        };
        let csv = render_results(&payload, Format::Csv);
        assert_eq!(csv.lines().count(), 8);
        assert_eq!(csv.lines().next(), Some("4,3,2,1"));
        let json = render_results(&payload, Format::Json);
        assert!(json.contains("\"count\":\"8\",\"labelings\":[[4,3,2,1],"));

        let empty = EnumerationBatch {
            labelings: vec![],
            truncated: false,
        };
        let json = render_results(
            &Payload::Enumeration {
                graph: &g,
                peaks: VertexSet::from([4]),
                batch: &empty,
            },
            Format::Json,
        );
        assert!(
            json.ends_with("\"peaks\":[4],\"count\":\"0\",\"labelings\":[],\"truncated\":false}\n")
        );
    }

    #[test]
    fn unknown_format() {
        assert_eq!("xml".parse::<Format>(), Err(UnknownFormat("xml".into())));
        assert_eq!("csv".parse::<Format>(), Ok(Format::Csv));
    }
}
