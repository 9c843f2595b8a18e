//! graph6 and plain edge-list encodings.
//!
//! graph6 layout for `n <= 62`: one header byte `n + 63`, then the upper
//! triangle bits `x(0,1), x(0,2), x(1,2), x(0,3), ...` (column by column)
//! packed big-endian into 6-bit groups, each emitted as `group + 63`.

use crate::error::ParseError;
use crate::graph::Graph;

/// Largest order representable with the single-byte size header.
pub const GRAPH6_MAX_ORDER: usize = 62;

const HEADER: &str = ">>graph6<<";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Padding {
    /// Ignore whatever sits in the padding bits.
    #[default]
    Lenient,
    /// Reject nonzero padding bits.
    Strict,
}

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= GRAPH6_MAX_ORDER, "graph6 encoding limited to {GRAPH6_MAX_ORDER} vertices");
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    parse_graph6_with(text, Padding::Lenient)
}

pub fn parse_graph6_with(text: &str, padding: Padding) -> Result<Graph, ParseError> {
    let text = text.trim_end_matches(['\r', '\n']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let (&head, body) = bytes.split_first().ok_or(ParseError::Empty)?;
    if !(63..=126).contains(&head) {
        return Err(ParseError::ByteOutOfRange { byte: head, offset: 0 });
    }
    if head == 126 {
        return Err(ParseError::BadHeader(head));
    }
    let n = (head - 63) as usize;
    let expected = payload_len(n);
    if body.len() != expected {
        return Err(ParseError::Truncated { expected, got: body.len() });
    }
    for (k, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::ByteOutOfRange { byte: b, offset: k + 1 });
        }
    }

    let mut adj = vec![0u64; n];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = body[bit / 6] - 63;
            if group >> (5 - bit % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    if padding == Padding::Strict && !bit.is_multiple_of(6) {
        let last = body[bit / 6] - 63;
        let pad_bits = 6 - bit % 6;
        if last & ((1 << pad_bits) - 1) != 0 {
            return Err(ParseError::NonzeroPadding);
        }
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Parses whitespace-separated `u v` pairs, one per line. An optional
/// first line `n <count>` fixes the order so trailing isolated vertices
/// can be expressed. Blank lines and `#` comments are skipped; repeated
/// edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut first = true;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ParseError::EdgeList { line: line_no, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if first && toks.first() == Some(&"n") {
            first = false;
            if toks.len() != 2 {
                return Err(err("expected `n <count>`".into()));
            }
            let n = toks[1].parse::<usize>().map_err(|_| err(format!("bad vertex count `{}`", toks[1])))?;
            declared = Some(n);
            continue;
        }
        first = false;
        if toks.len() != 2 {
            return Err(err(format!("expected two vertices, found {} tokens", toks.len())));
        }
        let parse = |t: &str| t.parse::<usize>().map_err(|_| err(format!("`{t}` is not a nonnegative integer")));
        let (u, v) = (parse(toks[0])?, parse(toks[1])?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        pairs.push((u, v));
    }
    let seen = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < seen => {
            return Err(ParseError::EdgeList {
                line: 1,
                msg: format!("declared {n} vertices but label {} appears", seen - 1),
            })
        }
        Some(n) => n,
        None => seen,
    };
    Ok(Graph::from_edges(n, pairs)?)
}

/// Inverse of [`parse_edge_list`]: an `n` line followed by the edges.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.order());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.0, e.1));
    }
    s
}
