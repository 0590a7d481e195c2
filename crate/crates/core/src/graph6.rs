//! graph6 encoding: a size header `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order, six bits per byte, each byte offset by 63.

use crate::graph::{Graph, GraphError, VertexId};

const BIAS: u8 = 63;
const MAX_BYTE: u8 = 126;
const MAX_ORDER: usize = (1 << 36) - 1;

fn malformed(offset: usize, reason: &'static str) -> GraphError {
    GraphError::MalformedGraph6 { offset, reason }
}

/// Parses a graph6 line into a connected graph.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let g = parse_graph6_relaxed(text)?;
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(g)
}

/// Parses a graph6 line without requiring connectivity.
///
/// A leading `>>graph6<<` header and trailing whitespace are accepted.
pub fn parse_graph6_relaxed(text: &str) -> Result<Graph, GraphError> {
    let mut bytes = text.trim_end().as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=MAX_BYTE).contains(&b) {
            return Err(malformed(
                base + i,
                "byte outside the printable range 63..=126",
            ));
        }
    }
    let (n, header_len) = decode_order(bytes).map_err(|(off, why)| malformed(base + off, why))?;
    if n == 0 {
        return Err(malformed(base, "graph has no vertices"));
    }
    let bits = n * (n - 1) / 2;
    let body_len = bits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() < body_len {
        return Err(malformed(base + bytes.len(), "adjacency data is truncated"));
    }
    if body.len() > body_len {
        return Err(malformed(
            base + header_len + body_len,
            "trailing bytes after adjacency data",
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body_len - 1] - BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(malformed(
                base + header_len + body_len - 1,
                "nonzero padding bits",
            ));
        }
    }
    Graph::from_edge_list_relaxed(n, edges)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize), (usize, &'static str)> {
    let value = |range: std::ops::Range<usize>| {
        bytes[range]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - BIAS))
    };
    match bytes {
        [] => Err((0, "empty input")),
        [MAX_BYTE, MAX_BYTE, ..] => {
            if bytes.len() < 8 {
                return Err((bytes.len(), "truncated 8-byte size header"));
            }
            Ok((value(2..8), 8))
        }
        [MAX_BYTE, ..] => {
            if bytes.len() < 4 {
                return Err((bytes.len(), "truncated 4-byte size header"));
            }
            Ok((value(1..4), 4))
        }
        [b, ..] => Ok((usize::from(b - BIAS), 1)),
    }
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    assert!(n <= MAX_ORDER, "order {n} exceeds the graph6 limit");
    let push_bits = |out: &mut Vec<u8>, words: usize| {
        for i in (0..words).rev() {
            out.push(((n >> (6 * i)) & 0x3f) as u8 + BIAS);
        }
    };
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(MAX_BYTE);
        push_bits(out, 3);
    } else {
        out.push(MAX_BYTE);
        out.push(MAX_BYTE);
        push_bits(out, 6);
    }
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// graph6 of a tree given by a parent array in which `parent[v] < v` for
/// every non-root `v` (the root is vertex 0 and `parent[0]` is ignored).
pub fn tree_to_graph6(parent: &[VertexId]) -> String {
    let n = parent.len();
    let edges = (1..n).map(|v| (parent[v], v));
    to_graph6(&Graph::from_edge_list(n, edges).expect("a parent array describes a tree"))
}
