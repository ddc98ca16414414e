//! graph6, sparse6 and digraph6 lines, plantri's planar_code, and the
//! orientation sidecar (a graph6 line followed by `O:` and one digit per edge
//! in graph6 edge order: 0 undirected, 1 min to max, 2 max to min).
//!
//! All readers accept multiple records per input and skip blank lines and
//! optional `>>graph6<<`-style headers.

use super::{Dir, MultiGraph, OrientedGraph, PartialOrientation, PlaneEmbedding};
use crate::error::{Error, Result};

const SIX_BITS: u8 = 63;

fn decode_n(bytes: &[u8], offset: usize) -> Result<(usize, usize)> {
    let byte = |i: usize| -> Result<usize> {
        let b = *bytes
            .get(i)
            .ok_or_else(|| Error::format(offset + i, "truncated vertex count"))?;
        if !(63..=126).contains(&b) {
            return Err(Error::format(
                offset + i,
                format!("byte {b} outside 63..=126"),
            ));
        }
        Ok((b - SIX_BITS) as usize)
    };
    let first = byte(0)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if bytes.get(1) == Some(&126) {
        let mut n = 0;
        for i in 2..8 {
            n = n << 6 | byte(i)?;
        }
        Ok((n, 8))
    } else {
        let mut n = 0;
        for i in 1..4 {
            n = n << 6 | byte(i)?;
        }
        Ok((n, 4))
    }
}

fn encode_n(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + SIX_BITS) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 0x3f) as u8 + SIX_BITS) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 0x3f) as u8 + SIX_BITS) as char);
        }
    }
}

/// Reads 6-bit groups into a bit vector, most significant bit first.
fn decode_bits(bytes: &[u8], offset: usize) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(bytes.len() * 6);
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::format(
                offset + i,
                format!("byte {b} outside 63..=126"),
            ));
        }
        let v = b - SIX_BITS;
        for shift in (0..6).rev() {
            bits.push(v >> shift & 1 == 1);
        }
    }
    Ok(bits)
}

fn encode_bits(bits: &[bool], out: &mut String) {
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for i in 0..6 {
            v = v << 1 | chunk.get(i).copied().unwrap_or(false) as u8;
        }
        out.push((v + SIX_BITS) as char);
    }
}

fn strip_header<'a>(line: &'a str, header: &str) -> (&'a str, usize) {
    match line.strip_prefix(header) {
        Some(rest) => (rest, header.len()),
        None => (line, 0),
    }
}

/// Parses one graph6 line. Edge ids follow `(min, max)` lexicographic order.
pub fn parse_graph6(line: &str) -> Result<MultiGraph> {
    let (body, skip) = strip_header(line.trim_end_matches(['\n', '\r']), ">>graph6<<");
    let bytes = body.as_bytes();
    let (n, used) = decode_n(bytes, skip)?;
    let need = n * n.saturating_sub(1) / 2;
    let data = &bytes[used..];
    if data.len() != need.div_ceil(6) {
        return Err(Error::format(
            skip + used,
            format!(
                "expected {} data bytes for {n} vertices, found {}",
                need.div_ceil(6),
                data.len()
            ),
        ));
    }
    let bits = decode_bits(data, skip + used)?;
    if bits[need..].iter().any(|&b| b) {
        return Err(Error::format(
            skip + bytes.len() - 1,
            "nonzero padding bits",
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    MultiGraph::new(n, edges)
}

pub fn write_graph6(g: &MultiGraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::UnsupportedFormat(
            "graph6 cannot store parallel edges".into(),
        ));
    }
    let n = g.n();
    let mut adj = vec![false; n * n];
    for (_, a, b) in g.edges() {
        adj[a * n + b] = true;
        adj[b * n + a] = true;
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i * n + j]);
        }
    }
    let mut out = String::new();
    encode_n(n, &mut out);
    encode_bits(&bits, &mut out);
    Ok(out)
}

fn sparse6_k(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// Parses one sparse6 line (`:` prefix). Parallel edges are kept; loops are rejected.
pub fn parse_sparse6(line: &str) -> Result<MultiGraph> {
    let (body, skip) = strip_header(line.trim_end_matches(['\n', '\r']), ">>sparse6<<");
    let bytes = body.as_bytes();
    if bytes.first() != Some(&b':') {
        return Err(Error::format(skip, "sparse6 line must start with ':'"));
    }
    let (n, used) = decode_n(&bytes[1..], skip + 1)?;
    let bits = decode_bits(&bytes[1 + used..], skip + 1 + used)?;
    let k = sparse6_k(n);
    let mut edges = Vec::new();
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let mut x = 0usize;
        for i in 0..k {
            x = x << 1 | bits[pos + 1 + i] as usize;
        }
        pos += 1 + k;
        if b {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            if x == v {
                return Err(Error::format(
                    skip + 1 + used + pos / 6,
                    format!("loop at vertex {v} is not supported"),
                ));
            }
            edges.push((x, v));
        }
    }
    edges.sort_unstable();
    MultiGraph::new(n, edges)
}

pub fn write_sparse6(g: &MultiGraph) -> String {
    let n = g.n();
    let k = sparse6_k(n);
    let mut edges: Vec<(usize, usize)> = g.edges().map(|(_, a, b)| (a.max(b), a.min(b))).collect();
    edges.sort_unstable();
    let mut bits = Vec::new();
    let push = |bits: &mut Vec<bool>, x: usize| {
        for i in (0..k).rev() {
            bits.push(x >> i & 1 == 1);
        }
    };
    let mut cur = 0usize;
    for (v, u) in edges {
        if v == cur {
            bits.push(false);
            push(&mut bits, u);
        } else if v == cur + 1 {
            cur += 1;
            bits.push(true);
            push(&mut bits, u);
        } else {
            cur = v;
            bits.push(true);
            push(&mut bits, v);
            bits.push(false);
            push(&mut bits, u);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == 1 << k && pad >= k && cur + 1 < n {
        bits.push(false);
    }
    while bits.len() % 6 != 0 {
        bits.push(true);
    }
    let mut out = String::from(":");
    encode_n(n, &mut out);
    encode_bits(&bits, &mut out);
    out
}

/// Parses one digraph6 line (`&` prefix). Every arc becomes a directed edge;
/// a 2-cycle becomes two parallel edges. Loops are rejected.
pub fn parse_digraph6(line: &str) -> Result<OrientedGraph> {
    let (body, skip) = strip_header(line.trim_end_matches(['\n', '\r']), ">>digraph6<<");
    let bytes = body.as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(Error::format(skip, "digraph6 line must start with '&'"));
    }
    let (n, used) = decode_n(&bytes[1..], skip + 1)?;
    let data = &bytes[1 + used..];
    let need = n * n;
    if data.len() != need.div_ceil(6) {
        return Err(Error::format(
            skip + 1 + used,
            format!(
                "expected {} data bytes for {n} vertices, found {}",
                need.div_ceil(6),
                data.len()
            ),
        ));
    }
    let bits = decode_bits(data, skip + 1 + used)?;
    if bits[need..].iter().any(|&b| b) {
        return Err(Error::format(
            skip + bytes.len() - 1,
            "nonzero padding bits",
        ));
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if bits[i * n + j] {
                if i == j {
                    return Err(Error::format(
                        skip + 1 + used + (i * n + j) / 6,
                        format!("loop at vertex {i} is not supported"),
                    ));
                }
                // (min, max, reverse?) sorts a -> b before b -> a
                arcs.push((i.min(j), i.max(j), i > j));
            }
        }
    }
    arcs.sort_unstable();
    let graph = MultiGraph::new(n, arcs.iter().map(|&(a, b, _)| (a, b)))?;
    let states = arcs
        .iter()
        .map(|&(_, _, rev)| if rev { Dir::Backward } else { Dir::Forward })
        .collect();
    OrientedGraph::new(graph, PartialOrientation::from_states(states))
}

pub fn write_digraph6(d: &OrientedGraph) -> Result<String> {
    let n = d.graph.n();
    let mut bits = vec![false; n * n];
    for e in 0..d.graph.m() {
        let (t, h) = d
            .arc(e)
            .ok_or_else(|| Error::UnsupportedFormat("digraph6 needs every edge directed".into()))?;
        if bits[t * n + h] {
            return Err(Error::UnsupportedFormat(
                "digraph6 cannot store parallel arcs".into(),
            ));
        }
        bits[t * n + h] = true;
    }
    let mut out = String::from("&");
    encode_n(n, &mut out);
    encode_bits(&bits, &mut out);
    Ok(out)
}

/// Two-line sidecar record for a simple partially oriented graph.
pub fn write_sidecar(d: &OrientedGraph) -> Result<String> {
    let g6 = write_graph6(&d.graph)?;
    let mut states = String::from("O:");
    for e in d.graph.lexicographic_edge_order() {
        let (a, b) = d.graph.endpoints(e);
        states.push(match d.arc(e) {
            None => '0',
            Some((t, _)) if t == a.min(b) => '1',
            Some(_) => '2',
        });
    }
    Ok(format!("{g6}\n{states}"))
}

fn parse_states(line: &str, g: &MultiGraph, offset: usize) -> Result<PartialOrientation> {
    let digits = line
        .strip_prefix("O:")
        .ok_or_else(|| Error::format(offset, "missing 'O:'"))?;
    if digits.len() != g.m() {
        return Err(Error::format(
            offset + 2,
            format!("{} states for {} edges", digits.len(), g.m()),
        ));
    }
    let mut states = Vec::with_capacity(g.m());
    for (i, c) in digits.bytes().enumerate() {
        let (a, b) = g.endpoints(i);
        states.push(match c {
            b'0' => Dir::Undirected,
            b'1' if a < b => Dir::Forward,
            b'1' => Dir::Backward,
            b'2' if a < b => Dir::Backward,
            b'2' => Dir::Forward,
            _ => {
                return Err(Error::format(
                    offset + 2 + i,
                    format!("bad state {:?}", c as char),
                ))
            }
        });
    }
    Ok(PartialOrientation::from_states(states))
}

/// Reads sidecar records. A graph6 line not followed by an `O:` line is
/// read as fully undirected.
pub fn read_sidecar(text: &str) -> Vec<Result<OrientedGraph>> {
    let mut out = Vec::new();
    let lines: Vec<(usize, &str)> = line_offsets(text)
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let mut i = 0;
    while i < lines.len() {
        let (off, line) = lines[i];
        i += 1;
        let g = match parse_graph6(line.trim()) {
            Ok(g) => g,
            Err(e) => {
                out.push(Err(shift(e, off)));
                continue;
            }
        };
        let o = match lines.get(i) {
            Some(&(soff, s)) if s.trim().starts_with("O:") => {
                i += 1;
                parse_states(s.trim(), &g, soff)
            }
            _ => Ok(PartialOrientation::undirected(g.m())),
        };
        out.push(o.and_then(|o| OrientedGraph::new(g, o)));
    }
    out
}

fn line_offsets(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split('\n').map(move |l| {
        let here = offset;
        offset += l.len() + 1;
        (here, l.trim_end_matches('\r'))
    })
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Format { offset, message } => Error::Format {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

/// One parsed line of a mixed graph6 / sparse6 / digraph6 stream.
pub fn parse_any_line(line: &str) -> Result<OrientedGraph> {
    let trimmed = line.trim();
    let body = trimmed
        .strip_prefix(">>graph6<<")
        .or_else(|| trimmed.strip_prefix(">>sparse6<<"))
        .or_else(|| trimmed.strip_prefix(">>digraph6<<"))
        .unwrap_or(trimmed);
    match body.as_bytes().first() {
        Some(b':') => parse_sparse6(body).map(OrientedGraph::undirected),
        Some(b'&') => parse_digraph6(body),
        _ => parse_graph6(body).map(OrientedGraph::undirected),
    }
}

/// Parses every non-blank line; byte offsets in errors are file-relative.
pub fn read_lines(text: &str) -> Vec<Result<OrientedGraph>> {
    line_offsets(text)
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(off, l)| parse_any_line(l).map_err(|e| shift(e, off)))
        .collect()
}

const PLANAR_HEADER: &[u8] = b">>planar_code";

/// Parses a planar_code byte stream into embeddings; the rotation at each
/// vertex is the stored neighbor order, verbatim.
pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<PlaneEmbedding>> {
    let mut pos = 0;
    let mut little_endian = false;
    if bytes.starts_with(PLANAR_HEADER) {
        let end = bytes
            .windows(2)
            .position(|w| w == b"<<")
            .filter(|&p| p >= PLANAR_HEADER.len())
            .ok_or_else(|| Error::format(0, "unterminated planar_code header"))?;
        let tag = &bytes[PLANAR_HEADER.len()..end];
        little_endian = tag == b" le";
        if !(tag.is_empty() || tag == b" le" || tag == b" be") {
            return Err(Error::format(
                PLANAR_HEADER.len(),
                "unknown planar_code header tag",
            ));
        }
        pos = end + 2;
    }
    let mut out = Vec::new();
    while pos < bytes.len() {
        let record_start = pos;
        let mut wide = false;
        let mut n = bytes[pos] as usize;
        pos += 1;
        if n == 0 {
            wide = true;
            n = read_word(bytes, pos, little_endian)?;
            pos += 2;
        }
        let mut orders = Vec::with_capacity(n);
        for _ in 0..n {
            let mut list = Vec::new();
            loop {
                let x = if wide {
                    let x = read_word(bytes, pos, little_endian)?;
                    pos += 2;
                    x
                } else {
                    let x = *bytes
                        .get(pos)
                        .ok_or_else(|| Error::format(pos, "truncated planar_code record"))?
                        as usize;
                    pos += 1;
                    x
                };
                if x == 0 {
                    break;
                }
                if x > n {
                    return Err(Error::format(
                        pos - 1,
                        format!("neighbor {x} exceeds n = {n}"),
                    ));
                }
                list.push(x - 1);
            }
            orders.push(list);
        }
        let emb = PlaneEmbedding::from_neighbor_orders(&orders).map_err(|e| match e {
            Error::InvalidEmbedding(m) => Error::format(record_start, m),
            other => other,
        })?;
        out.push(emb);
    }
    Ok(out)
}

fn read_word(bytes: &[u8], pos: usize, little_endian: bool) -> Result<usize> {
    let w = bytes
        .get(pos..pos + 2)
        .ok_or_else(|| Error::format(pos, "truncated planar_code record"))?;
    Ok(if little_endian {
        u16::from_le_bytes([w[0], w[1]])
    } else {
        u16::from_be_bytes([w[0], w[1]])
    } as usize)
}

/// Writes embeddings with the `>>planar_code<<` header (big-endian words
/// for graphs over 255 vertices).
pub fn write_planar_code(embeddings: &[PlaneEmbedding]) -> Vec<u8> {
    let mut out = b">>planar_code<<".to_vec();
    for emb in embeddings {
        let n = emb.graph().n();
        let wide = n > 255;
        let put = |out: &mut Vec<u8>, x: usize| {
            if wide {
                out.extend((x as u16).to_be_bytes());
            } else {
                out.push(x as u8);
            }
        };
        if wide {
            out.push(0);
        }
        put(&mut out, n);
        for v in 0..n {
            for w in emb.neighbor_order(v) {
                put(&mut out, w + 1);
            }
            put(&mut out, 0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;

    #[test]
    fn graph6_hand_encoded() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!((k4.n(), k4.m()), (4, 6));
        let edge = parse_graph6("A_").unwrap();
        assert_eq!((edge.n(), edge.m()), (2, 1));
        assert_eq!(write_graph6(&named::k4()).unwrap(), "C~");
        assert_eq!(write_graph6(&edge).unwrap(), "A_");
        assert_eq!(write_graph6(&named::petersen()).unwrap().len(), 9);
        let p = parse_graph6("IheA@GUAo").unwrap();
        assert!(p.is_cubic());
    }

    #[test]
    fn graph6_errors_name_offsets() {
        assert!(matches!(
            parse_graph6("C"),
            Err(Error::Format { offset: 1, .. })
        ));
        assert!(matches!(parse_graph6("A`"), Err(Error::Format { .. })));
        assert!(matches!(
            parse_graph6("C~~"),
            Err(Error::Format { offset: 1, .. })
        ));
        assert!(matches!(parse_graph6("C\u{7f}"), Err(Error::Format { .. })));
        let multi = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]);
        assert!(matches!(
            write_graph6(&multi),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn graph6_long_header() {
        let g = named::cycle(100);
        let s = write_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back.n(), 100);
        assert_eq!(back.m(), 100);
    }

    #[test]
    fn digraph6_two_cycle() {
        // 2 vertices, bits 0110 -> 011000 = 24
        let line = format!("&A{}", (24u8 + 63) as char);
        let d = parse_digraph6(&line).unwrap();
        assert_eq!((d.graph.n(), d.graph.m()), (2, 2));
        assert!(d.orientation.is_full());
        assert_eq!(d.arc(0), Some((0, 1)));
        assert_eq!(d.arc(1), Some((1, 0)));
        assert_eq!(write_digraph6(&d).unwrap(), line);
    }

    #[test]
    fn sparse6_handles_multigraphs() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        let s = write_sparse6(&g);
        let back = parse_sparse6(&s).unwrap();
        assert_eq!(back, g);
        // the padding special case: n = 2^k, vertex n - 2 has an edge, n - 1 none
        let h = MultiGraph::from_edges(4, &[(0, 2)]);
        assert_eq!(parse_sparse6(&write_sparse6(&h)).unwrap(), h);
    }

    #[test]
    fn sidecar_format() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let o = PartialOrientation::from_states(vec![Dir::Forward, Dir::Backward, Dir::Undirected]);
        let d = OrientedGraph::new(g, o).unwrap();
        let text = write_sidecar(&d).unwrap();
        assert_eq!(text, "Bw\nO:120");
        let back = read_sidecar(&text);
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].as_ref().unwrap(), &d);
        assert!(read_sidecar("Bw\nO:13").pop().unwrap().is_err());
    }

    #[test]
    fn planar_code_assets() {
        let embs = parse_planar_code(include_bytes!("../../assets/planar_cubic.pc")).unwrap();
        assert_eq!(embs.len(), 6);
        for e in &embs {
            assert!(e.graph().is_cubic());
            assert_eq!(e.face_count(), 2 + e.graph().n() / 2);
        }
        assert_eq!(embs[0].face_count(), 4);
        let again = parse_planar_code(&write_planar_code(&embs)).unwrap();
        assert_eq!(again, embs);
        assert!(parse_planar_code(b"").unwrap().is_empty());
        assert!(parse_planar_code(b">>planar_code<<").unwrap().is_empty());
        assert!(parse_planar_code(&[4, 2, 3, 0]).is_err());
    }

    #[test]
    fn mixed_stream_reader() {
        let text = ">>graph6<<C~\n\n:Fa@x^\n&AO\nbogus!\n";
        let parsed = read_lines(text);
        assert_eq!(parsed.len(), 4);
        assert!(parsed[0].is_ok());
        assert!(parsed[1].is_ok());
        assert!(parsed[2].is_ok());
        assert!(matches!(parsed[3], Err(Error::Format { offset, .. }) if offset >= 21));
    }

    fn arb_simple_graph() -> impl Strategy<Value = MultiGraph> {
        (1usize..40).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits[k] {
                            edges.push((a, b));
                        }
                        k += 1;
                    }
                }
                MultiGraph::from_edges(n, &edges)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn graph6_and_sparse6_round_trip(g in arb_simple_graph()) {
            let s = write_graph6(&g).unwrap();
            prop_assert_eq!(&parse_graph6(&s).unwrap(), &g);
            prop_assert_eq!(write_graph6(&parse_graph6(&s).unwrap()).unwrap(), s);
            prop_assert_eq!(&parse_sparse6(&write_sparse6(&g)).unwrap(), &g);
        }
    }
}
