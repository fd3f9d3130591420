//! graph6 encoding (McKay's format).
//!
//! Order header: one byte `n + 63` for `n ≤ 62`; `~` followed by three
//! 6-bit groups for `n ≤ 258047`; `~~` followed by six groups beyond that.
//! The body packs the upper triangle column by column (`x(0,1), x(0,2),
//! x(1,2), x(0,3), …`) into 6-bit groups, each offset by 63, with zero
//! padding in the last group.

use thiserror::Error;

use super::{Graph, GraphBuilder};

/// Largest order expressible with the short (`~` + 18 bit) header.
pub const GRAPH6_MAX_ORDER: usize = 258_047;
const LONG_MAX_ORDER: u64 = (1 << 36) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("truncated order header")]
    TruncatedHeader,
    #[error("order {0} exceeds the encodable range")]
    OrderTooLarge(u64),
    #[error("expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after the adjacency data")]
    TrailingGarbage(usize),
    #[error("padding bit set beyond the upper triangle")]
    PaddingBitSet,
}

fn push_groups(out: &mut Vec<u8>, value: u64, groups: u32) {
    for i in (0..groups).rev() {
        out.push(((value >> (6 * i)) & 0x3f) as u8 + 63);
    }
}

pub(crate) fn encode_order(n: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(8);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= GRAPH6_MAX_ORDER {
        out.push(126);
        push_groups(&mut out, n as u64, 3);
    } else {
        assert!(n as u64 <= LONG_MAX_ORDER, "order {n} not encodable in graph6");
        out.extend_from_slice(&[126, 126]);
        push_groups(&mut out, n as u64, 6);
    }
    out
}

fn group(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        None => Err(Graph6Error::TruncatedHeader),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(Graph6Error::BadByte { offset, byte: b }),
    }
}

/// Returns `(n, header_length)`.
pub(crate) fn decode_order(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    if !(63..=126).contains(&first) {
        return Err(Graph6Error::BadByte { offset: 0, byte: first });
    }
    if first < 126 {
        return Ok(((first - 63) as u64, 1));
    }
    if bytes.get(1) == Some(&126) {
        let mut n = 0u64;
        for i in 0..6 {
            n = (n << 6) | group(bytes, 2 + i)?;
        }
        Ok((n, 8))
    } else {
        let mut n = 0u64;
        for i in 0..3 {
            n = (n << 6) | group(bytes, 1 + i)?;
        }
        Ok((n, 4))
    }
}

pub fn to_graph6(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = encode_order(n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | row.contains(i) as u8;
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
    out
}

/// Strict decoder: the input must be exactly one graph6 record with no
/// line terminator.
pub fn from_graph6(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let (n, header) = decode_order(bytes)?;
    let data = &bytes[header..];
    let bits = n as u128 * n.saturating_sub(1) as u128 / 2;
    let expected = bits.div_ceil(6);
    if expected > usize::MAX as u128 {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let (n, bits, expected) = (n as usize, bits as usize, expected as usize);
    if data.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingGarbage(data.len() - expected));
    }
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte {
                offset: header + i,
                byte: b,
            });
        }
    }
    let pad = expected * 6 - bits;
    if pad > 0 {
        let last = data[expected - 1] - 63;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::PaddingBitSet);
        }
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                b.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    Ok(b.build())
}
