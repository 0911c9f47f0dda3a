//! Text codecs for graphs: the single-byte-header graph6 format (n <= 62)
//! and a plain `n m` edge-list format.
//!
//! graph6 packs the upper triangle of the adjacency matrix in column order
//! x(0,1), x(0,2), x(1,2), x(0,3), ... six bits per byte, most significant
//! bit first, each byte offset by 63. Parsing is strict: unexpected bytes,
//! truncation, trailing data, and nonzero padding bits are all rejected with
//! the byte offset where the problem sits.

use thiserror::Error;

use crate::graph::Graph;

/// Largest vertex count expressible with a single-byte graph6 header.
pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("empty input")]
    Empty,
    #[error("multi-byte graph6 header at offset {offset} is not supported (n > 62)")]
    UnsupportedHeader { offset: usize },
    #[error("byte {byte:#04x} at offset {offset} outside graph6 range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("graph6 body truncated: expected {expected} data bytes, found {actual}")]
    TruncatedBody { expected: usize, actual: usize },
    #[error("unexpected trailing byte at offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("nonzero padding bit in graph6 byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("graph on {n} vertices exceeds the graph6 single-byte limit of {GRAPH6_MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("edge list line {line}: expected two integers")]
    MalformedEdge { line: usize },
    #[error("edge list header: expected `n m` on the first line")]
    MalformedHeader,
    #[error("edge list declared {expected} edges but {actual} edge lines follow")]
    EdgeCountMismatch { expected: usize, actual: usize },
    #[error("edge list line {line}: loop edge ({v}, {v})")]
    LoopEdge { line: usize, v: usize },
    #[error("edge list line {line}: vertex {id} out of range for n = {n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
}

/// Upper-triangle pairs in graph6 column order.
fn triangle_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |j| (0..j).map(move |i| (i, j)))
}

/// Decodes one graph6 line (no trailing newline) into a graph.
pub fn parse_graph6(line: &str) -> Result<Graph, CodecError> {
    let bytes = line.as_bytes();
    let &header = bytes.first().ok_or(CodecError::Empty)?;
    if header == 126 {
        return Err(CodecError::UnsupportedHeader { offset: 0 });
    }
    if !(63..=125).contains(&header) {
        return Err(CodecError::ByteOutOfRange {
            offset: 0,
            byte: header,
        });
    }
    let n = (header - 63) as usize;
    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(6);
    let body = &bytes[1..];
    if body.len() < byte_count {
        return Err(CodecError::TruncatedBody {
            expected: byte_count,
            actual: body.len(),
        });
    }
    if body.len() > byte_count {
        return Err(CodecError::TrailingBytes {
            offset: 1 + byte_count,
        });
    }
    let mut edges = Vec::new();
    for (k, (i, j)) in triangle_pairs(n).enumerate() {
        let byte = body[k / 6];
        if !(63..=126).contains(&byte) {
            return Err(CodecError::ByteOutOfRange {
                offset: 1 + k / 6,
                byte,
            });
        }
        let bit = (byte - 63) >> (5 - k % 6) & 1;
        if bit == 1 {
            edges.push((i, j));
        }
    }
    // Padding bits beyond the triangle must be zero.
    for k in bit_count..byte_count * 6 {
        let byte = body[k / 6];
        if !(63..=126).contains(&byte) {
            return Err(CodecError::ByteOutOfRange {
                offset: 1 + k / 6,
                byte,
            });
        }
        if (byte - 63) >> (5 - k % 6) & 1 == 1 {
            return Err(CodecError::NonzeroPadding { offset: 1 + k / 6 });
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("triangle pairs are loop-free and in range"))
}

/// Encodes a graph (n <= 62) as a graph6 line without trailing newline.
pub fn write_graph6(g: &Graph) -> Result<String, CodecError> {
    let n = g.vertex_count();
    if n > GRAPH6_MAX_VERTICES {
        return Err(CodecError::TooManyVertices { n });
    }
    let mut out = vec![63 + n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in triangle_pairs(n) {
        acc = acc << 1 | g.has_edge(i, j) as u8;
        filled += 1;
        if filled == 6 {
            out.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses the `n m` edge-list format: a header line, then exactly `m` lines
/// of `u v`. Blank lines are ignored; duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, CodecError> {
    // Keep original line numbers for error reporting.
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(CodecError::Empty)?;
    let mut header_fields = header.split_whitespace();
    let n: usize = header_fields
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(CodecError::MalformedHeader)?;
    let m: usize = header_fields
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(CodecError::MalformedHeader)?;
    if header_fields.next().is_some() {
        return Err(CodecError::MalformedHeader);
    }
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if edges.len() == m {
            return Err(CodecError::EdgeCountMismatch {
                expected: m,
                actual: m + 1,
            });
        }
        let mut fields = line.split_whitespace();
        let (u, v) = match (
            fields.next().and_then(|t| t.parse::<usize>().ok()),
            fields.next().and_then(|t| t.parse::<usize>().ok()),
            fields.next(),
        ) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(CodecError::MalformedEdge { line: line_no }),
        };
        if u == v {
            return Err(CodecError::LoopEdge { line: line_no, v: u });
        }
        for id in [u, v] {
            if id >= n {
                return Err(CodecError::VertexOutOfRange {
                    line: line_no,
                    id,
                    n,
                });
            }
        }
        edges.push((u, v));
    }
    if edges.len() < m {
        return Err(CodecError::EdgeCountMismatch {
            expected: m,
            actual: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, &edges).expect("edges validated above"))
}

/// Writes the `n m` edge-list format with one sorted edge per line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_round_trips_as_c_tilde() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(write_graph6(&g).unwrap(), "C~");
    }

    #[test]
    fn ch_is_the_four_path() {
        let g = parse_graph6("Ch").unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(write_graph6(&g).unwrap(), "Ch");
    }

    #[test]
    fn single_vertex_is_at_sign() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(write_graph6(&g).unwrap(), "@");
    }

    #[test]
    fn empty_graph_is_question_mark() {
        let g = parse_graph6("?").unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(write_graph6(&g).unwrap(), "?");
    }

    #[test]
    fn k2_and_k3_fixtures() {
        assert_eq!(parse_graph6("A_").unwrap().edge_count(), 1);
        assert_eq!(parse_graph6("A?").unwrap().edge_count(), 0);
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.vertex_count(), 3);
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(write_graph6(&k3).unwrap(), "Bw");
    }

    #[test]
    fn nonzero_padding_rejected_with_offset() {
        // n = 3 uses three data bits; `x` = 0b111001 sets a padding bit.
        assert_eq!(
            parse_graph6("Bx"),
            Err(CodecError::NonzeroPadding { offset: 1 })
        );
        // n = 2 uses one data bit; "A`" = 0b100001 sets the last padding bit.
        assert_eq!(
            parse_graph6("A`"),
            Err(CodecError::NonzeroPadding { offset: 1 })
        );
    }

    #[test]
    fn truncation_and_trailing_data_rejected() {
        assert_eq!(
            parse_graph6("C"),
            Err(CodecError::TruncatedBody {
                expected: 1,
                actual: 0
            })
        );
        assert_eq!(
            parse_graph6("C~~"),
            Err(CodecError::TrailingBytes { offset: 2 })
        );
        assert_eq!(
            parse_graph6("@?"),
            Err(CodecError::TrailingBytes { offset: 1 })
        );
    }

    #[test]
    fn out_of_range_bytes_rejected() {
        assert_eq!(
            parse_graph6(" C"),
            Err(CodecError::ByteOutOfRange {
                offset: 0,
                byte: b' '
            })
        );
        assert_eq!(
            parse_graph6("C "),
            Err(CodecError::ByteOutOfRange {
                offset: 1,
                byte: b' '
            })
        );
        assert_eq!(parse_graph6(""), Err(CodecError::Empty));
    }

    #[test]
    fn extended_header_unsupported() {
        assert_eq!(
            parse_graph6("~??"),
            Err(CodecError::UnsupportedHeader { offset: 0 })
        );
    }

    #[test]
    fn write_rejects_oversized_graphs() {
        let g = Graph::empty(63);
        assert_eq!(write_graph6(&g), Err(CodecError::TooManyVertices { n: 63 }));
    }

    #[test]
    fn edge_list_parses_two_disjoint_edges() {
        let g = parse_edge_list("4 2\n0 1\n2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn edge_list_single_vertex() {
        let g = parse_edge_list("1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edge_list_rejects_loops_and_ranges() {
        assert_eq!(
            parse_edge_list("3 1\n0 0\n"),
            Err(CodecError::LoopEdge { line: 2, v: 0 })
        );
        assert_eq!(
            parse_edge_list("3 1\n0 7\n"),
            Err(CodecError::VertexOutOfRange {
                line: 2,
                id: 7,
                n: 3
            })
        );
    }

    #[test]
    fn edge_list_rejects_count_mismatch() {
        assert_eq!(
            parse_edge_list("4 3\n0 1\n1 2\n"),
            Err(CodecError::EdgeCountMismatch {
                expected: 3,
                actual: 2
            })
        );
        assert_eq!(
            parse_edge_list("4 1\n0 1\n1 2\n"),
            Err(CodecError::EdgeCountMismatch {
                expected: 1,
                actual: 2
            })
        );
    }

    #[test]
    fn edge_list_rejects_malformed_lines() {
        assert_eq!(parse_edge_list("x y\n"), Err(CodecError::MalformedHeader));
        assert_eq!(
            parse_edge_list("3 1\n0 one\n"),
            Err(CodecError::MalformedEdge { line: 2 })
        );
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, &[(0, 4), (1, 2), (2, 3)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "5 3\n0 4\n1 2\n2 3\n");
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
    }
}
