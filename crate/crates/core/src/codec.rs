//! Graph interchange formats.
//!
//! * Edge-list text: line 1 `"n m"`, then `m` lines `"u v"` (ASCII
//!   decimal, 0-indexed, whitespace-separated, LF line endings).
//! * graph6: byte `63 + n` for `n <= 62`, then the upper-triangle
//!   adjacency bits in column order (`j` from 1, `i` from 0 to `j-1`),
//!   packed big-endian 6 bits per byte, each byte offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
    #[error("graph6 supports at most 62 vertices here, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(position: String, message: impl Into<String>) -> CodecError {
    CodecError::Parse {
        position,
        message: message.into(),
    }
}

/// Parses the edge-list text format into a validated [`Graph`].
pub fn parse_edge_list(text: &str) -> Result<Graph, CodecError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err("line 1".into(), "empty input"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .ok_or_else(|| parse_err(format!("line {}", lineno + 1), "missing vertex count"))?
        .parse()
        .map_err(|_| parse_err(format!("line {}", lineno + 1), "bad vertex count"))?;
    let m: usize = it
        .next()
        .ok_or_else(|| parse_err(format!("line {}", lineno + 1), "missing edge count"))?
        .parse()
        .map_err(|_| parse_err(format!("line {}", lineno + 1), "bad edge count"))?;
    if it.next().is_some() {
        return Err(parse_err(
            format!("line {}", lineno + 1),
            "trailing tokens after header",
        ));
    }
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let pos = format!("line {}", lineno + 1);
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .ok_or_else(|| parse_err(pos.clone(), "missing endpoint"))?
            .parse()
            .map_err(|_| parse_err(pos.clone(), "bad endpoint"))?;
        let v: usize = it
            .next()
            .ok_or_else(|| parse_err(pos.clone(), "missing endpoint"))?
            .parse()
            .map_err(|_| parse_err(pos.clone(), "bad endpoint"))?;
        if it.next().is_some() {
            return Err(parse_err(pos, "trailing tokens on edge line"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            "end of input".into(),
            format!("expected {} edges, found {}", m, edges.len()),
        ));
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    out
}

/// Encodes a graph into graph6 (order at most 62).
pub fn encode_graph6(g: &Graph) -> Result<String, CodecError> {
    let n = g.n();
    if n > 62 {
        return Err(CodecError::TooLarge(n));
    }
    let mut out = Vec::new();
    out.push(63 + n as u8);
    let mut bits = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            bits <<= 1;
            if g.has_edge(i, j) {
                bits |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + bits);
                bits = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (bits << (6 - filled)));
    }
    Ok(String::from_utf8(out).unwrap())
}

/// Decodes a graph6 line into a validated (connected) [`Graph`]. Reports
/// malformed bytes with their offset.
pub fn decode_graph6(line: &str) -> Result<Graph, CodecError> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(parse_err("byte 0".into(), "empty graph6 line"));
    }
    let first = bytes[0];
    if first == b'~' {
        return Err(parse_err(
            "byte 0".into(),
            "multi-byte graph6 orders are not supported",
        ));
    }
    if !(63..=125).contains(&first) {
        return Err(parse_err("byte 0".into(), format!("bad size byte {first}")));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(parse_err("byte 0".into(), "graph6 order 0"));
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(parse_err(
            format!("byte {}", bytes.len()),
            format!("expected {} data bytes for order {}, got {}", nbytes, n, bytes.len() - 1),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(parse_err(
                    format!("byte {}", 1 + bit / 6),
                    format!("bad data byte {byte}"),
                ));
            }
            let group = byte - 63;
            if (group >> (5 - bit % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    // Trailing pad bits must be zero.
    if nbits % 6 != 0 {
        let last = bytes[1 + nbytes - 1];
        if !(63..=126).contains(&last) {
            return Err(parse_err(
                format!("byte {nbytes}"),
                format!("bad data byte {last}"),
            ));
        }
        let pad = 6 - nbits % 6;
        if (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(parse_err(
                format!("byte {nbytes}"),
                "nonzero padding bits",
            ));
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_roundtrip() {
        let text = "2 1\n0 1\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(write_edge_list(&g), text);
    }

    #[test]
    fn edge_list_errors_carry_position() {
        let err = parse_edge_list("2 1\n0 x\n").unwrap_err();
        assert!(matches!(err, CodecError::Parse { ref position, .. } if position == "line 2"));
        let err = parse_edge_list("").unwrap_err();
        assert!(matches!(err, CodecError::Parse { .. }));
        assert!(matches!(
            parse_edge_list("4 2\n0 1\n2 3\n").unwrap_err(),
            CodecError::Graph(GraphError::Disconnected)
        ));
    }

    #[test]
    fn known_graph6_fixture() {
        // "DQc" is the 5-vertex graph with edges 02, 04, 13, 34.
        let g = decode_graph6("DQc").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(encode_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn small_fixtures() {
        let p2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(encode_graph6(&p2).unwrap(), "A_");
        let k3 = Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode_graph6(&k3).unwrap(), "Bw");
        assert_eq!(decode_graph6("Bw").unwrap().edges(), k3.edges());
        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(encode_graph6(&k1).unwrap(), "@");
        assert_eq!(decode_graph6("@").unwrap().n(), 1);
    }

    #[test]
    fn malformed_graph6_is_rejected_with_offset() {
        let err = decode_graph6("D\u{7f}c").unwrap_err();
        assert!(matches!(err, CodecError::Parse { .. }), "{err:?}");
        let err = decode_graph6("DQ").unwrap_err();
        assert!(matches!(err, CodecError::Parse { .. }));
        // Nonzero padding bits.
        let err = decode_graph6("A`").unwrap_err();
        assert!(matches!(err, CodecError::Parse { .. }));
    }
}
