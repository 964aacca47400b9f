//! Edge-list and graph6 readers/writers, and DOT rendering of witness walks.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::span::{validate_tracks, TrackPair};

/// Largest order the short graph6 form can encode.
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph6: invalid character {0:?}")]
    BadChar(char),
    #[error("graph6: expected {expected} bytes, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("graph6: order {0} needs the long form, which is not supported")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ParseError {
    /// True when the input was well-formed but described a disconnected graph.
    pub fn is_disconnected(&self) -> bool {
        matches!(self, ParseError::Graph(GraphError::Disconnected { .. }))
    }
}

/// Parses `n <count>` followed by one `u v` pair per line. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let syntax = |message: &str| ParseError::Syntax {
            line,
            message: message.to_string(),
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(syntax("expected header `n <count>`"));
                }
                n = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| syntax("vertex count is not a non-negative integer"))?,
                );
            }
            Some(count) => {
                if fields.len() != 2 {
                    return Err(syntax("expected `u v`"));
                }
                let mut ends = [0usize; 2];
                for (slot, field) in ends.iter_mut().zip(&fields) {
                    *slot = field
                        .parse()
                        .map_err(|_| syntax("vertex is not a non-negative integer"))?;
                    if *slot >= count {
                        return Err(syntax(&format!("vertex {slot} out of range 0..{count}")));
                    }
                }
                edges.push((ends[0], ends[1]));
            }
        }
    }
    let n = n.ok_or_else(|| ParseError::Syntax {
        line: text.lines().count().max(1),
        message: "missing header `n <count>`".to_string(),
    })?;
    Ok(Graph::new(n, edges)?)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Upper-triangle bit order used by graph6: `(0,1), (0,2), (1,2), (0,3), ...`.
fn graph6_bit_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

fn graph6_data_len(n: usize) -> usize {
    (n * (n.saturating_sub(1)) / 2).div_ceil(6)
}

/// Decodes a short-form graph6 line (surrounding whitespace is ignored).
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let line = line.trim();
    let bytes = line.as_bytes();
    if let Some(c) = line.chars().find(|c| !('?'..='~').contains(c)) {
        return Err(ParseError::BadChar(c));
    }
    let (&head, data) = bytes.split_first().ok_or(ParseError::LengthMismatch {
        expected: 1,
        found: 0,
    })?;
    if head == b'~' {
        return Err(ParseError::TooLarge(GRAPH6_MAX_N + 1));
    }
    let n = (head - 63) as usize;
    let expected = graph6_data_len(n);
    if data.len() != expected {
        return Err(ParseError::LengthMismatch {
            expected: expected + 1,
            found: bytes.len(),
        });
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let edges: Vec<_> = graph6_bit_pairs(n)
        .enumerate()
        .filter(|&(k, _)| bit(k))
        .map(|(_, e)| e)
        .collect();
    let total_bits = n * n.saturating_sub(1) / 2;
    if (total_bits..expected * 6).any(bit) {
        // Non-canonical padding; refuse rather than silently normalize.
        let last = *data.last().expect("padding implies data") as char;
        return Err(ParseError::BadChar(last));
    }
    Ok(Graph::new(n, edges)?)
}

/// Encodes `g` as short-form graph6. Panics if `g.n() > 62`.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(
        n <= GRAPH6_MAX_N,
        "graph6 short form holds at most 62 vertices"
    );
    let mut data = vec![0u8; graph6_data_len(n)];
    for (k, (i, j)) in graph6_bit_pairs(n).enumerate() {
        if g.has_edge(i, j) {
            data[k / 6] |= 1 << (5 - k % 6);
        }
    }
    let mut out = String::with_capacity(data.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid tracks: {0}")]
pub struct InvalidTracks(pub String);

/// Renders the base graph (undirected edges) with Alice's moves as red
/// arrows and Bob's as blue arrows, labeled by step number.
pub fn emit_witness_dot(g: &Graph, tracks: &TrackPair) -> Result<String, InvalidTracks> {
    let report = validate_tracks(g, tracks).map_err(|e| InvalidTracks(e.to_string()))?;
    if !report.conforms {
        return Err(InvalidTracks(format!(
            "tracks do not follow the {} movement rule",
            tracks.rule()
        )));
    }
    let mut out = String::from("digraph witness {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let _ = writeln!(
            out,
            "  {v} [label=\"{}\"];",
            g.label(v).replace('"', "\\\"")
        );
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -> {v} [dir=none, color=gray];");
    }
    for (walk, color) in [(tracks.alice(), "red"), (tracks.bob(), "blue")] {
        for (step, w) in walk.windows(2).enumerate() {
            if w[0] != w[1] {
                let _ = writeln!(
                    out,
                    "  {} -> {} [color={color}, label=\"{}\"];",
                    w[0],
                    w[1],
                    step + 1
                );
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
