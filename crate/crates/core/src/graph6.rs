//! graph6 encoding (header-free).
//!
//! Layout: the vertex count `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) …`),
//! packed six bits per byte, big-endian within each group, each group
//! offset by 63. The last group is zero-padded.

use crate::error::{Graph6ErrorKind, GraphError};
use crate::graph::{Graph, MAX_VERTICES};

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn err(offset: usize, kind: Graph6ErrorKind) -> GraphError {
    GraphError::Graph6 { offset, kind }
}

fn sextet(bytes: &[u8], i: usize) -> Result<u64, GraphError> {
    match bytes.get(i) {
        None => Err(err(i, Graph6ErrorKind::Truncated)),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(_) => Err(err(i, Graph6ErrorKind::NonPrintable)),
    }
}

/// Parses one graph6 line. A single trailing `\n` (or `\r\n`) is allowed.
pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let bytes = text.as_bytes();
    let first = *bytes.first().ok_or(err(0, Graph6ErrorKind::Empty))?;
    if !(63..=126).contains(&first) {
        return Err(err(0, Graph6ErrorKind::NonPrintable));
    }
    let (n, mut pos) = if first < 126 {
        ((first - 63) as u64, 1)
    } else if bytes.get(1) == Some(&126) {
        let mut n = 0;
        for i in 2..8 {
            n = n << 6 | sextet(bytes, i).map_err(|_| err(i, Graph6ErrorKind::LengthPrefix))?;
        }
        if n <= 258_047 {
            return Err(err(0, Graph6ErrorKind::LengthPrefix));
        }
        (n, 8)
    } else {
        let mut n = 0;
        for i in 1..4 {
            n = n << 6 | sextet(bytes, i).map_err(|_| err(i, Graph6ErrorKind::LengthPrefix))?;
        }
        if n <= 62 {
            return Err(err(0, Graph6ErrorKind::LengthPrefix));
        }
        (n, 4)
    };
    if n as usize > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n as usize));
    }
    let n = n as usize;
    let mut g = Graph::empty(n);
    let total = n * n.saturating_sub(1) / 2;
    let groups = total.div_ceil(6);
    let data_start = pos;
    let mut bit = 0;
    let (mut i, mut j) = (0usize, 1usize);
    for _ in 0..groups {
        let s = sextet(bytes, pos)?;
        for b in (0..6).rev() {
            let on = s >> b & 1 == 1;
            if bit < total {
                if on {
                    g.set_edge(i, j);
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if on {
                return Err(err(pos, Graph6ErrorKind::Padding));
            }
            bit += 1;
        }
        pos += 1;
    }
    if pos != bytes.len() {
        debug_assert!(pos >= data_start);
        return Err(err(pos, Graph6ErrorKind::TrailingGarbage));
    }
    Ok(g)
}
