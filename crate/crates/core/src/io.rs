//! graph6, sparse6 and plain edge-list encodings.
//!
//! The graph6/sparse6 byte layouts follow the nauty `formats.txt` description:
//! the order is written as `N(n)` (one, four or eight bytes), and bit strings
//! are packed six bits per byte, most significant bit first, offset by 63.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at position {pos} is outside the printable graph6 range")]
    BadByte { pos: usize, byte: u8 },
    #[error("truncated input: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after the encoded graph")]
    Trailing,
    #[error("vertex count {0} exceeds the encodable range")]
    TooLarge(usize),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const BIAS: u8 = 63;
const HEADER_G6: &str = ">>graph6<<";
const HEADER_S6: &str = ">>sparse6<<";

fn push_size(out: &mut Vec<u8>, n: usize) -> Result<(), FormatError> {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else if n <= 68_719_476_735 {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        return Err(FormatError::TooLarge(n));
    }
    Ok(())
}

/// Parses `N(n)`; returns the order and the number of bytes consumed.
fn read_size(data: &[u8]) -> Result<(usize, usize), FormatError> {
    let six = |i: usize| -> Result<usize, FormatError> {
        match data.get(i) {
            None => Err(FormatError::Truncated { expected: i + 1, found: data.len() }),
            Some(&b) if !(63..=126).contains(&b) => Err(FormatError::BadByte { pos: i, byte: b }),
            Some(&b) => Ok((b - BIAS) as usize),
        }
    };
    let first = six(0)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if six(1)? < 63 {
        let n = (1..4).try_fold(0usize, |acc, i| Ok::<_, FormatError>(acc << 6 | six(i)?))?;
        Ok((n, 4))
    } else {
        let n = (2..8).try_fold(0usize, |acc, i| Ok::<_, FormatError>(acc << 6 | six(i)?))?;
        Ok((n, 8))
    }
}

struct BitWriter {
    bytes: Vec<u8>,
    acc: u8,
    used: u32,
}

impl BitWriter {
    fn new() -> Self {
        BitWriter { bytes: Vec::new(), acc: 0, used: 0 }
    }

    fn push(&mut self, bit: bool) {
        self.acc = self.acc << 1 | bit as u8;
        self.used += 1;
        if self.used == 6 {
            self.bytes.push(self.acc + BIAS);
            self.acc = 0;
            self.used = 0;
        }
    }

    fn push_bits(&mut self, value: usize, width: u32) {
        for i in (0..width).rev() {
            self.push(value >> i & 1 == 1);
        }
    }

    fn pending(&self) -> u32 {
        self.used
    }

    fn finish_with(mut self, pad: bool) -> Vec<u8> {
        while self.used != 0 {
            self.push(pad);
        }
        self.bytes
    }
}

struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn remaining(&self) -> usize {
        self.data.len() * 6 - self.pos
    }

    fn bit(&mut self) -> bool {
        let byte = self.data[self.pos / 6] - BIAS;
        let b = byte >> (5 - self.pos % 6) & 1 == 1;
        self.pos += 1;
        b
    }

    fn bits(&mut self, width: u32) -> usize {
        (0..width).fold(0, |acc, _| acc << 1 | self.bit() as usize)
    }
}

fn check_body(body: &[u8], offset: usize) -> Result<(), FormatError> {
    match body.iter().position(|b| !(63..=126).contains(b)) {
        Some(i) => Err(FormatError::BadByte { pos: offset + i, byte: body[i] }),
        None => Ok(()),
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    push_size(&mut out, n).expect("graph order fits graph6");
    let mut w = BitWriter::new();
    for j in 1..n {
        for i in 0..j {
            w.push(g.has_edge(i, j));
        }
    }
    out.extend(w.finish_with(false));
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER_G6).unwrap_or(s);
    if s.is_empty() {
        return Err(FormatError::Empty);
    }
    let data = s.as_bytes();
    let (n, head) = read_size(data)?;
    let body = &data[head..];
    check_body(body, head)?;
    let expected = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() < expected {
        return Err(FormatError::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(FormatError::Trailing);
    }
    let mut r = BitReader { data: body, pos: 0 };
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if r.bit() {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

fn vertex_width(n: usize) -> u32 {
    let mut k = 0;
    let mut x = n.saturating_sub(1);
    while x > 0 {
        x >>= 1;
        k += 1;
    }
    k
}

pub fn to_sparse6(g: &Graph) -> String {
    let n = g.order();
    let k = vertex_width(n);
    let mut out = vec![b':'];
    push_size(&mut out, n).expect("graph order fits sparse6");
    let mut w = BitWriter::new();
    let mut last = 0usize;
    for j in 0..n {
        for i in g.neighbors(j).take_while(|&i| i < j) {
            if j == last {
                w.push(false);
            } else {
                w.push(true);
                if j > last + 1 {
                    w.push_bits(j, k);
                    w.push(false);
                }
                last = j;
            }
            w.push_bits(i, k);
        }
    }
    let pending = w.pending();
    if pending != 0 {
        let pad = 6 - pending;
        // all-ones padding would decode as a spurious edge in this case
        if k < 6 && n == 1 << k && last + 2 == n && pad > k {
            w.push(false);
        }
    }
    out.extend(w.finish_with(true));
    String::from_utf8(out).expect("sparse6 is ASCII")
}

pub fn from_sparse6(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER_S6).unwrap_or(s);
    let data = s.strip_prefix(':').ok_or(FormatError::Empty)?.as_bytes();
    if data.is_empty() {
        return Err(FormatError::Empty);
    }
    let (n, head) = read_size(data)?;
    let body = &data[head..];
    check_body(body, head + 1)?;
    let k = vertex_width(n);
    let mut r = BitReader { data: body, pos: 0 };
    let mut g = Graph::empty(n);
    let mut v = 0usize;
    while r.remaining() > k as usize {
        if r.bit() {
            v += 1;
        }
        if v >= n {
            break;
        }
        let x = r.bits(k);
        if x > v {
            v = x;
        } else {
            g.add_edge(x, v);
        }
    }
    Ok(g)
}

/// Accepts either graph6 or sparse6 (the latter starts with `:`).
pub fn from_graph6_any(s: &str) -> Result<Graph, FormatError> {
    let t = s.trim();
    if t.starts_with(':') || t.starts_with(HEADER_S6) {
        from_sparse6(t)
    } else {
        from_graph6(t)
    }
}

/// Plain text: first line `n`, then one `u v` pair per line.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, first) = lines.next().ok_or(FormatError::Empty)?;
    let n: usize = first
        .parse()
        .map_err(|_| FormatError::EdgeList { line, msg: format!("expected vertex count, got {first:?}") })?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let parse =
            |t: &str| t.parse::<usize>().map_err(|_| FormatError::EdgeList { line, msg: format!("bad vertex {t:?}") });
        match parts.as_slice() {
            [u, v] => edges.push((parse(u)?, parse(v)?)),
            _ => return Err(FormatError::EdgeList { line, msg: "expected two vertices".into() }),
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}
