//! graph6 short-form encoding.
//!
//! Layout: one order byte `n + 63`, then the upper triangle of the
//! adjacency matrix read column by column (`x(0,1), x(0,2), x(1,2),
//! x(0,3), ...`), packed six bits per byte big-endian, zero padded, each
//! byte offset by 63.

use super::{Graph, MAX_ORDER};
use crate::error::{Graph6ErrorKind, LabError, Result};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, kind: Graph6ErrorKind) -> LabError {
    LabError::Graph6 { offset, kind }
}

fn triangle_bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Decode one graph6 line. A leading `>>graph6<<` header and a trailing
/// line terminator are accepted. Offsets in errors count bytes from the
/// start of `text`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    if text.starts_with(HEADER) {
        pos = HEADER.len();
    }
    let mut end = bytes.len();
    while end > pos && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    if pos == end {
        return Err(err(pos, Graph6ErrorKind::Empty));
    }
    for (k, &b) in bytes[pos..end].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(pos + k, Graph6ErrorKind::OutOfRange(b)));
        }
    }

    // Order prefix. 126 introduces the long forms, whose smallest value (63)
    // is already beyond MAX_ORDER.
    let n = match bytes[pos] {
        126 => {
            return Err(err(pos, Graph6ErrorKind::BadLengthPrefix));
        }
        b => (b - 63) as usize,
    };
    debug_assert!(n <= MAX_ORDER);
    pos += 1;

    let nbits = triangle_bits(n);
    let nbytes = nbits.div_ceil(6);
    let available = end - pos;
    if available < nbytes {
        return Err(err(end, Graph6ErrorKind::Truncated { expected: nbytes, found: available }));
    }
    if available > nbytes {
        return Err(err(pos + nbytes, Graph6ErrorKind::TrailingGarbage));
    }

    let mut g = Graph::empty(n)?;
    let data = &bytes[pos..end];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let last = data[nbytes - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos + nbytes - 1, Graph6ErrorKind::NonZeroPadding));
        }
    }
    Ok(g)
}

/// Decode every non-blank line of a graph6 file; the first error aborts.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_graph6)
        .collect()
}

/// Encode a graph. Live vertices are relabeled densely in increasing id
/// order first, so contracted graphs encode as their compacted form.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let order = g.order();
    if order > MAX_ORDER {
        return Err(LabError::OrderTooLarge { order, max: MAX_ORDER });
    }
    let (g, _) = g.compacted();
    let nbits = triangle_bits(order);
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(order as u8 + 63);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
