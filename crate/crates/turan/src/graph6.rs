//! graph6 text codec, bit-exact per the published convention.
//!
//! The header byte is `n + 63` (single byte suffices at our 16-vertex
//! capacity). The upper triangle of the adjacency matrix follows in column
//! order — pair `(i, j)` with `i < j` sorted by `j` then `i` — packed into
//! 6-bit groups MSB-first, zero-padded, each group offset by 63.

use crate::{Error, Graph, Result, MAX_VERTICES};

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2 + 5) / 6
}

/// Encodes a graph as a graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(1 + if n > 1 { body_len(n) } else { 0 });
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 line. Strict: exact length, bytes in `63..=126`,
/// zero padding bits, `n <= 16`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    if bytes[0] == b'>' {
        return Err(Error::Graph6("optional format header not supported".into()));
    }
    let n = match bytes[0] {
        b @ 63..=126 => (b - 63) as usize,
        b => return Err(Error::Graph6(format!("header byte {b} out of range 63..=126"))),
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let need = if n > 1 { body_len(n) } else { 0 };
    if bytes.len() != 1 + need {
        return Err(Error::Graph6(format!(
            "expected {} bytes for n={n}, got {}",
            1 + need,
            bytes.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let mut t = 0usize;
    for (gi, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!(
                "body byte {b} at position {} out of range 63..=126",
                gi + 1
            )));
        }
        let group = b - 63;
        for k in 0..6 {
            let bit = (group >> (5 - k)) & 1;
            if t >= nbits {
                if bit != 0 {
                    return Err(Error::Graph6("nonzero padding bits".into()));
                }
                continue;
            }
            if bit != 0 {
                let (i, j) = pair_of_index(t);
                g.add_edge_unchecked(i, j);
            }
            t += 1;
        }
    }
    Ok(g)
}

/// Inverse of the column-order packing: bit `t` encodes pair `(i, j)`.
fn pair_of_index(t: usize) -> (usize, usize) {
    let mut j = 1usize;
    let mut base = 0usize;
    while base + j <= t {
        base += j;
        j += 1;
    }
    (t - base, j)
}
