//! graph6 codec: one header-less ASCII record per graph, upper triangle
//! packed column-by-column into 6-bit groups offset by 63.

use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{Graph, MAX_ORDER, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    #[error("empty record")]
    EmptyRecord,
    #[error("malformed header at byte {offset}: {reason}")]
    MalformedHeader { offset: usize, reason: &'static str },
    #[error("byte {byte:#04x} at offset {offset} outside graph6 range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("truncated bit body: need {need} bytes after the header, got {got}")]
    Truncated { need: usize, got: usize },
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
}

fn check_range(bytes: &[u8], start: usize) -> Result<(), Graph6Error> {
    for (i, &b) in bytes.iter().enumerate().skip(start) {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::OutOfRange { offset: i, byte: b });
        }
    }
    Ok(())
}

/// Parses the order prefix, returning `(n, header_len)`.
fn parse_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    match bytes.first() {
        None => Err(Graph6Error::EmptyRecord),
        Some(&b) if b != b'~' => {
            if !(63..=126).contains(&b) {
                return Err(Graph6Error::OutOfRange { offset: 0, byte: b });
            }
            Ok(((b - 63) as usize, 1))
        }
        Some(_) => {
            // '~' prefix: 3-byte (18-bit) order, or '~~' for 36-bit.
            if bytes.get(1) == Some(&b'~') {
                if bytes.len() < 8 {
                    return Err(Graph6Error::MalformedHeader {
                        offset: 1,
                        reason: "'~~' header needs 6 size bytes",
                    });
                }
                check_range(&bytes[2..8], 0).map_err(|e| match e {
                    Graph6Error::OutOfRange { offset, byte } => {
                        Graph6Error::OutOfRange { offset: offset + 2, byte }
                    }
                    other => other,
                })?;
                let mut n: u64 = 0;
                for &b in &bytes[2..8] {
                    n = n << 6 | (b - 63) as u64;
                }
                Err(Graph6Error::TooLarge(n))
            } else {
                if bytes.len() < 4 {
                    return Err(Graph6Error::MalformedHeader {
                        offset: 1,
                        reason: "'~' header needs 3 size bytes",
                    });
                }
                check_range(&bytes[1..4], 0).map_err(|e| match e {
                    Graph6Error::OutOfRange { offset, byte } => {
                        Graph6Error::OutOfRange { offset: offset + 1, byte }
                    }
                    other => other,
                })?;
                let mut n: u64 = 0;
                for &b in &bytes[1..4] {
                    n = n << 6 | (b - 63) as u64;
                }
                if n as usize > MAX_ORDER {
                    return Err(Graph6Error::TooLarge(n));
                }
                Ok((n as usize, 4))
            }
        }
    }
}

/// Decodes one graph6 record (leading/trailing whitespace ignored).
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim().as_bytes();
    let (n, header) = parse_order(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() < need {
        return Err(Graph6Error::Truncated { need, got: body.len() });
    }
    check_range(bytes, header)?;

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i as Vertex, j as Vertex));
            }
            bit += 1;
            if bit >= nbits {
                break 'outer;
            }
        }
    }
    // Graph::from_edges cannot fail here: indices are < n and i < j.
    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range"))
}

/// Encodes a graph as a canonical graph6 record.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut acc: u8 = 0;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i as Vertex, j as Vertex) {
                acc |= 1;
            }
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
    String::from_utf8(out).expect("graph6 bytes are ascii")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn smallest_record_is_k1() {
        let g = decode("@").unwrap();
        assert_eq!((g.n(), g.e()), (1, 0));
        assert_eq!(encode(&g), "@");
    }

    #[test]
    fn known_records() {
        let k4 = decode("C~").unwrap();
        assert_eq!((k4.n(), k4.e()), (4, 6));
        assert!(k4.is_complete());
        let k3 = decode("Bw").unwrap();
        assert_eq!((k3.n(), k3.e()), (3, 3));
        assert_eq!(encode(&construct::complete(4)), "C~");
        assert_eq!(encode(&construct::complete(3)), "Bw");
    }

    #[test]
    fn error_offsets() {
        assert_eq!(decode(""), Err(Graph6Error::EmptyRecord));
        assert_eq!(decode("C"), Err(Graph6Error::Truncated { need: 1, got: 0 }));
        match decode("C\x1f") {
            Err(Graph6Error::OutOfRange { offset: 1, byte: 0x1f }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match decode("~C") {
            Err(Graph6Error::MalformedHeader { offset: 1, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn long_order_header_roundtrip() {
        let g = construct::cycle(100).unwrap();
        let s = encode(&g);
        assert!(s.starts_with('~'));
        let h = decode(&s).unwrap();
        assert_eq!(h, g);
    }

    /// Independent re-encoder used as the oracle: builds the record from
    /// first principles with string arithmetic, no shared code.
    fn oracle_encode(n: usize, has: impl Fn(usize, usize) -> bool) -> String {
        assert!(n <= 62);
        let mut bits = String::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(if has(i, j) { '1' } else { '0' });
            }
        }
        while bits.len() % 6 != 0 {
            bits.push('0');
        }
        let mut out = String::new();
        out.push((n as u8 + 63) as char);
        for chunk in bits.as_bytes().chunks(6) {
            let mut v = 0u8;
            for &c in chunk {
                v = v * 2 + (c - b'0');
            }
            out.push((v + 63) as char);
        }
        out
    }

    #[test]
    fn matches_independent_encoder_up_to_n5() {
        for n in 1..=5usize {
            let pairs: alloc::vec::Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|i| ((i + 1)..n as u32).map(move |j| (i, j)))
                .collect();
            for mask in 0..(1u32 << pairs.len()) {
                let edges: alloc::vec::Vec<(u32, u32)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let expected = oracle_encode(n, |i, j| g.has_edge(i as u32, j as u32));
                assert_eq!(encode(&g), expected);
                assert_eq!(decode(&expected).unwrap(), g);
            }
        }
    }
}
