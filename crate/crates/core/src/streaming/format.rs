//! Edge-stream files.
//!
//! ```text
//! lbstream 1
//! nodes 3
//! weighted 1
//! edges 2
//! 1 2 5
//! 2 3 0
//! ```
//!
//! Endpoints are 1-based ids; the weight column is present iff `weighted 1`.
//! The edge lines give the stream order.

use crate::graph::{IdEdge, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStream {
    pub nodes: usize,
    pub weighted: bool,
    pub edges: Vec<IdEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("edge stream line {line}: {message}")]
pub struct StreamParseError {
    pub line: usize,
    pub message: String,
}

pub fn write_edge_stream(s: &EdgeStream) -> String {
    let mut out = format!(
        "lbstream 1\nnodes {}\nweighted {}\nedges {}\n",
        s.nodes,
        s.weighted as u8,
        s.edges.len()
    );
    for e in &s.edges {
        match e.weight.filter(|_| s.weighted) {
            Some(w) => out.push_str(&format!("{} {} {w}\n", e.u.congest_id(), e.v.congest_id())),
            None => out.push_str(&format!("{} {}\n", e.u.congest_id(), e.v.congest_id())),
        }
    }
    out
}

pub fn parse_edge_stream(text: &str) -> Result<EdgeStream, StreamParseError> {
    let err = |line: usize, message: &str| StreamParseError {
        line,
        message: message.to_owned(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut header = |key: &str| -> Result<(usize, u64), StreamParseError> {
        let (no, l) = lines.next().ok_or_else(|| err(0, "unexpected end of input"))?;
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .and_then(|r| r.parse().ok())
            .map(|v| (no, v))
            .ok_or_else(|| err(no, &format!("expected `{key} <number>`")))
    };
    let (no, version) = header("lbstream")?;
    if version != 1 {
        return Err(err(no, "unsupported version"));
    }
    let nodes = header("nodes")?.1 as usize;
    let (wno, weighted) = header("weighted")?;
    if weighted > 1 {
        return Err(err(wno, "weighted must be 0 or 1"));
    }
    let weighted = weighted == 1;
    let (eno, count) = header("edges")?;
    let mut edges = Vec::new();
    for (no, l) in lines {
        let f: Vec<u64> = l
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| err(no, "bad number"))?;
        let want = if weighted { 3 } else { 2 };
        if f.len() != want {
            return Err(err(no, &format!("expected {want} fields")));
        }
        let (a, b) = (f[0] as usize, f[1] as usize);
        if a == 0 || b == 0 || a > nodes || b > nodes || a == b {
            return Err(err(no, "endpoints must be distinct ids in 1..=nodes"));
        }
        edges.push(IdEdge {
            u: NodeId(a.min(b) - 1),
            v: NodeId(a.max(b) - 1),
            weight: weighted.then(|| f[2]),
        });
    }
    if edges.len() as u64 != count {
        return Err(err(eno, "edge count does not match the records"));
    }
    Ok(EdgeStream {
        nodes,
        weighted,
        edges,
    })
}
