//! graph6 encoding of undirected graphs.
//!
//! The vertex count is written in the standard 1-, 4- or 8-byte form. The body
//! lists the upper triangle of the adjacency matrix column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed big-endian into 6-bit
//! groups, zero padded, with 63 added to every byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

/// Encodes `g` as a graph6 string (no header, no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Decodes a graph6 string. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted; everything else must be canonical, including zero
/// padding bits, so that `encode(decode(s)) == s`.
pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    match bytes[0] {
        b':' => return Err(Error::Graph6("sparse6 input is not supported".into())),
        b'&' => return Err(Error::Graph6("digraph6 input is not supported".into())),
        _ => {}
    }
    if let Some(pos) = bytes.iter().position(|&b| !(BIAS..=126).contains(&b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {pos} is outside the graph6 range",
            bytes[pos]
        )));
    }

    let (n, body) = decode_size(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[body.len() - 1] - BIAS;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("non-zero padding bits".into()));
        }
    }
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let short = || Error::Graph6("truncated vertex count".into());
    let field = |b: &[u8]| b.iter().fold(0usize, |acc, &x| (acc << 6) | (x - BIAS) as usize);
    if bytes[0] != 126 {
        return Ok(((bytes[0] - BIAS) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        let f = bytes.get(2..8).ok_or_else(short)?;
        let n = field(f);
        if n <= 258_047 {
            return Err(Error::Graph6("non-canonical 8-byte vertex count".into()));
        }
        return Ok((n, &bytes[8..]));
    }
    let f = bytes.get(1..4).ok_or_else(short)?;
    let n = field(f);
    if n <= 62 {
        return Err(Error::Graph6("non-canonical 4-byte vertex count".into()));
    }
    Ok((n, &bytes[4..]))
}
