//! graph6 codec and the plain edge-list text format.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`x(0,1) x(0,2) x(1,2) x(0,3) …`) into 6-bit groups, each offset by 63.
//! The order is written first: one byte for `n <= 62`, otherwise `~`
//! followed by three bytes.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 alphabet")]
    InvalidByte { byte: u8, offset: usize },
    #[error("truncated size header")]
    TruncatedHeader,
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("non-zero padding bits in final byte")]
    Padding,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u32, ParseError> {
    let byte = bytes[offset];
    if !(63..=126).contains(&byte) {
        return Err(ParseError::InvalidByte { byte, offset });
    }
    Ok(u32::from(byte - 63))
}

/// Decodes one graph6 record. Surrounding whitespace and the optional
/// `>>graph6<<` header are accepted; anything else is an error.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    let (n, body) = if bytes[0] != b'~' {
        (sextet(bytes, 0)? as usize, 1)
    } else if bytes.get(1) != Some(&b'~') {
        if bytes.len() < 4 {
            return Err(ParseError::TruncatedHeader);
        }
        let n = (1..4).try_fold(0u32, |acc, i| Ok::<_, ParseError>(acc << 6 | sextet(bytes, i)?))?;
        (n as usize, 4)
    } else {
        if bytes.len() < 8 {
            return Err(ParseError::TruncatedHeader);
        }
        let n = (2..8).try_fold(0u64, |acc, i| Ok::<_, ParseError>(acc << 6 | u64::from(sextet(bytes, i)?)))?;
        (n as usize, 8)
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, limit: MAX_VERTICES }.into());
    }

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[body..];
    if data.len() != expected {
        return Err(ParseError::Length { expected, found: data.len() });
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = sextet(data, k / 6).map_err(|e| match e {
                ParseError::InvalidByte { byte, offset } => ParseError::InvalidByte { byte, offset: offset + body },
                other => other,
            })?;
            if group >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = sextet(data, expected - 1)?;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(ParseError::Padding);
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.adjacent(i, j));
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Reads one graph6 record per non-blank line.
pub fn read_graph6_stream<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph, ParseError>> {
    reader.lines().filter_map(|line| match line {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(parse_graph6(&l)),
        Err(e) => Some(Err(ParseError::EdgeList { line: 0, message: e.to_string() })),
    })
}

/// Parses the edge-list format: a line `n m`, then `m` lines `u v`
/// (0-based, whitespace separated).
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |line: usize, message: &str| ParseError::EdgeList { line, message: message.to_owned() };

    let (hl, header) = lines.next().ok_or_else(|| bad(1, "missing `n m` header"))?;
    let nums = parse_pair(header).ok_or_else(|| bad(hl, "header must be `n m`"))?;
    let (n, m) = nums;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, limit: MAX_VERTICES }.into());
    }
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines.by_ref() {
        if edges.len() == m {
            return Err(bad(line, "more edge lines than announced"));
        }
        let e = parse_pair(l).ok_or_else(|| bad(line, "edge must be `u v`"))?;
        edges.push(e);
    }
    if edges.len() != m {
        return Err(bad(0, &format!("announced {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.size() != m {
        return Err(bad(0, "duplicate edges"));
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Some((a, b)),
        _ => None,
    }
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
