//! Text document format for graphs, partitions and instance metadata.
//!
//! ```text
//! lbgraph 1
//! weighted 1
//! wmax 100
//! nodes 3
//! edges 2
//! meta family apsp-star
//! [nodes]
//! set:A:0:0:0
//! ...
//! [edges]
//! set:A:0:0:0 center:A:0:0:0 3
//! ...
//! [partition]
//! set:A:0:0:0 A
//! ```
//!
//! Fields are separated by a single space. Labels are written as
//! `role:set:copy:index:bit` tokens and never contain spaces. Unweighted edges
//! carry `-` in the weight column. Metadata values run to the end of the line;
//! inside them `\\` encodes a backslash and `\n` a newline. All integers are
//! decimal. Nodes and edges appear in canonical order, so equal values
//! serialize to identical bytes.

use std::fmt::Write as _;

use super::graph::{Graph, GraphBuilder, PartitionedGraph, Side};
use super::label::NodeLabel;

pub const FORMAT_VERSION: u32 = 1;

/// Parsed or to-be-written document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub graph: Graph,
    pub sides: Option<Vec<Side>>,
    pub meta: Vec<(String, String)>,
}

impl Document {
    pub fn from_graph(graph: Graph) -> Document {
        Document {
            graph,
            sides: None,
            meta: Vec::new(),
        }
    }

    pub fn from_partitioned(pg: &PartitionedGraph) -> Document {
        Document {
            graph: pg.graph().clone(),
            sides: Some(pg.sides().to_vec()),
            meta: Vec::new(),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn partitioned(&self) -> Option<PartitionedGraph> {
        let sides = self.sides.clone()?;
        PartitionedGraph::from_sides(self.graph.clone(), sides).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn escape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for ch in value.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

pub fn unescape(value: &str) -> Result<String, usize> {
    let mut out = String::with_capacity(value.len());
    let mut chars = value.char_indices();
    while let Some((i, ch)) = chars.next() {
        if ch != '\\' {
            out.push(ch);
            continue;
        }
        match chars.next() {
            Some((_, '\\')) => out.push('\\'),
            Some((_, 'n')) => out.push('\n'),
            _ => return Err(i),
        }
    }
    Ok(out)
}

pub fn write_document(doc: &Document) -> String {
    let g = &doc.graph;
    let mut out = String::new();
    writeln!(out, "lbgraph {FORMAT_VERSION}").unwrap();
    writeln!(out, "weighted {}", u8::from(g.is_weighted())).unwrap();
    writeln!(out, "wmax {}", g.w_max()).unwrap();
    writeln!(out, "nodes {}", g.node_count()).unwrap();
    writeln!(out, "edges {}", g.edge_count()).unwrap();
    for (k, v) in &doc.meta {
        writeln!(out, "meta {k} {}", escape(v)).unwrap();
    }
    out.push_str("[nodes]\n");
    for l in g.labels() {
        writeln!(out, "{}", l.token()).unwrap();
    }
    out.push_str("[edges]\n");
    for e in g.edges() {
        match e.weight {
            Some(w) => writeln!(out, "{} {} {w}", e.u.token(), e.v.token()).unwrap(),
            None => writeln!(out, "{} {} -", e.u.token(), e.v.token()).unwrap(),
        }
    }
    if let Some(sides) = &doc.sides {
        out.push_str("[partition]\n");
        for (l, s) in g.labels().iter().zip(sides) {
            writeln!(out, "{} {}", l.token(), s.token()).unwrap();
        }
    }
    out
}

struct Cursor<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.lines.next().map(|(i, l)| (i + 1, l))
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Splits on single spaces, returning `(column, field)` pairs (1-based columns).
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in line.char_indices() {
        if ch == ' ' {
            out.push((start + 1, &line[start..i]));
            start = i + 1;
        }
    }
    out.push((start + 1, &line[start..]));
    out
}

fn header_value<T: std::str::FromStr>(
    cur: &mut Cursor<'_>,
    key: &str,
    last_line: usize,
) -> Result<T, ParseError> {
    let (no, line) = cur
        .next()
        .ok_or_else(|| err(last_line + 1, 1, format!("missing `{key}` header line")))?;
    let f = fields(line);
    if f.len() != 2 || f[0].1 != key {
        return Err(err(no, 1, format!("expected `{key} <value>`")));
    }
    f[1].1
        .parse()
        .map_err(|_| err(no, f[1].0, format!("invalid value for `{key}`")))
}

fn parse_label(no: usize, (col, tok): (usize, &str)) -> Result<NodeLabel, ParseError> {
    tok.parse().map_err(|e| err(no, col, format!("{e}")))
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut cur = Cursor {
        lines: text.lines().enumerate(),
    };
    let version: u32 = header_value(&mut cur, "lbgraph", 0)?;
    if version != FORMAT_VERSION {
        return Err(err(1, 9, format!("unsupported format version {version}")));
    }
    let weighted: u8 = header_value(&mut cur, "weighted", 1)?;
    if weighted > 1 {
        return Err(err(2, 10, "weighted flag must be 0 or 1"));
    }
    let w_max: u64 = header_value(&mut cur, "wmax", 2)?;
    let node_count: usize = header_value(&mut cur, "nodes", 3)?;
    let edge_count: usize = header_value(&mut cur, "edges", 4)?;
    let mut meta = Vec::new();
    let mut last = 5;
    loop {
        let (no, line) = cur.next().ok_or_else(|| err(last + 1, 1, "missing [nodes] section"))?;
        last = no;
        if line == "[nodes]" {
            break;
        }
        let rest = line
            .strip_prefix("meta ")
            .ok_or_else(|| err(no, 1, "expected `meta <key> <value>` or `[nodes]`"))?;
        let (key, value) = rest
            .split_once(' ')
            .ok_or_else(|| err(no, 6, "metadata line needs a key and a value"))?;
        if key.is_empty() {
            return Err(err(no, 6, "empty metadata key"));
        }
        let value = unescape(value).map_err(|i| err(no, 7 + key.len() + i, "bad escape"))?;
        meta.push((key.to_owned(), value));
    }

    let mut builder = GraphBuilder::new(weighted == 1, w_max);
    let mut order = Vec::with_capacity(node_count);
    for _ in 0..node_count {
        let (no, line) = cur.next().ok_or_else(|| err(last + 1, 1, "fewer nodes than declared"))?;
        last = no;
        let label = parse_label(no, (1, line))?;
        if order.last().is_some_and(|prev| *prev >= label) {
            return Err(err(no, 1, "nodes must be listed once each in canonical order"));
        }
        order.push(label);
        builder.add_node(label);
    }
    match cur.next() {
        Some((_, "[edges]")) => {}
        Some((no, _)) => return Err(err(no, 1, "expected [edges] after the declared nodes")),
        None => return Err(err(last + 1, 1, "missing [edges] section")),
    }
    last += 1;
    let mut prev_edge: Option<(NodeLabel, NodeLabel)> = None;
    for _ in 0..edge_count {
        let (no, line) = cur.next().ok_or_else(|| err(last + 1, 1, "fewer edges than declared"))?;
        last = no;
        let f = fields(line);
        if f.len() != 3 {
            return Err(err(no, 1, "edge line needs `<u> <v> <weight|->`"));
        }
        let u = parse_label(no, f[0])?;
        let v = parse_label(no, f[1])?;
        if u >= v || prev_edge.is_some_and(|p| p >= (u, v)) {
            return Err(err(no, 1, "edges must be listed in canonical order with u < v"));
        }
        prev_edge = Some((u, v));
        let weight = match f[2].1 {
            "-" => None,
            w => Some(w.parse().map_err(|_| err(no, f[2].0, "invalid weight"))?),
        };
        builder
            .add_edge(u, v, weight)
            .map_err(|e| err(no, 1, e.to_string()))?;
    }
    let graph = builder.build().map_err(|e| err(last, 1, e.to_string()))?;

    let sides = match cur.next() {
        None => None,
        Some((_, "[partition]")) => {
            last += 1;
            let mut sides = Vec::with_capacity(node_count);
            for expected in graph.labels() {
                let (no, line) = cur
                    .next()
                    .ok_or_else(|| err(last + 1, 1, "partition lists fewer nodes than the graph"))?;
                last = no;
                let f = fields(line);
                if f.len() != 2 {
                    return Err(err(no, 1, "partition line needs `<label> <A|B>`"));
                }
                if parse_label(no, f[0])? != *expected {
                    return Err(err(no, 1, "partition must list nodes in canonical order"));
                }
                sides.push(match f[1].1 {
                    "A" => Side::Alice,
                    "B" => Side::Bob,
                    _ => return Err(err(no, f[1].0, "side must be A or B")),
                });
            }
            Some(sides)
        }
        Some((no, _)) => return Err(err(no, 1, "unexpected content after [edges]")),
    };
    if let Some((no, _)) = cur.next() {
        return Err(err(no, 1, "trailing content"));
    }
    if let Some(s) = &sides {
        PartitionedGraph::from_sides(graph.clone(), s.clone())
            .map_err(|e| err(last, 1, e.to_string()))?;
    }
    Ok(Document { graph, sides, meta })
}
