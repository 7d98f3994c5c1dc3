//! Graph text formats: graph6 (read/write), sparse6 (read only), and a plain
//! edge list (`n m` header followed by `m` lines `u v`).
//!
//! graph6 and sparse6 follow the formats used by nauty's `geng` and
//! `showg`, bit for bit. Both accept an optional `>>graph6<<` /
//! `>>sparse6<<` header. Padding bits must be zero for graph6.

use std::io::{BufRead, BufReader, Read};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the decoders unless a caller raises it.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 14;

/// Largest order representable in a graph6/sparse6 size header.
pub const MAX_ENCODABLE_ORDER: u64 = 68_719_476_735;

const GRAPH6_HEADER: &[u8] = b">>graph6<<";
const SPARSE6_HEADER: &[u8] = b">>sparse6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Sparse6,
    Edgelist,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" => Ok(Format::Graph6),
            "sparse6" => Ok(Format::Sparse6),
            "edgelist" => Ok(Format::Edgelist),
            _ => Err(Error::invalid(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphRecord {
    pub graph: Graph,
    /// 1-based line where the record starts, when read from a stream.
    pub source_line: Option<usize>,
    pub format: Format,
}

/// Guesses the format of a line from its first byte.
pub fn detect_format(line: &[u8]) -> Option<Format> {
    match line.first()? {
        _ if line.starts_with(SPARSE6_HEADER) => Some(Format::Sparse6),
        _ if line.starts_with(GRAPH6_HEADER) => Some(Format::Graph6),
        b':' | b';' => Some(Format::Sparse6),
        b'#' | b'0'..=b'9' => Some(Format::Edgelist),
        63..=126 => Some(Format::Graph6),
        _ => None,
    }
}

fn trim_line_end(line: &[u8]) -> &[u8] {
    let line = line.strip_suffix(b"\n").unwrap_or(line);
    line.strip_suffix(b"\r").unwrap_or(line)
}

/// Reads `N(n)` starting at `pos`; returns `(n, bytes consumed)`.
fn read_size(data: &[u8], pos: usize) -> Result<(u64, usize)> {
    let byte = |k: usize| -> Result<u64> {
        match data.get(pos + k) {
            None => Err(Error::parse(pos + k, "truncated size header")),
            Some(&b) if !(63..=126).contains(&b) => {
                Err(Error::parse(pos + k, format!("byte {b:#04x} outside [63, 126]")))
            }
            Some(&b) => Ok(u64::from(b - 63)),
        }
    };
    let first = byte(0)?;
    if first != 63 {
        return Ok((first, 1));
    }
    let (start, count) = if byte(1)? == 63 { (2, 6) } else { (1, 3) };
    let mut n = 0;
    for k in start..start + count {
        n = n << 6 | byte(k)?;
    }
    Ok((n, start + count))
}

fn write_size(out: &mut String, n: usize) -> Result<()> {
    let n64 = n as u64;
    let push = |out: &mut String, v: u64| out.push((v as u8 + 63) as char);
    if n64 <= 62 {
        push(out, n64);
    } else if n64 <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            push(out, n64 >> shift & 63);
        }
    } else if n64 <= MAX_ENCODABLE_ORDER {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            push(out, n64 >> shift & 63);
        }
    } else {
        return Err(Error::TooLarge {
            what: "graph6 size header",
            n,
            limit: MAX_ENCODABLE_ORDER as usize,
        });
    }
    Ok(())
}

fn checked_order(n: u64, limit: usize, offset: usize) -> Result<usize> {
    match usize::try_from(n) {
        Ok(n) if n <= limit => Ok(n),
        _ => Err(Error::parse(offset, format!("order {n} exceeds decoder limit {limit}"))),
    }
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    parse_graph6_bytes(line.as_bytes(), DEFAULT_MAX_VERTICES)
}

/// Decodes one graph6 line (a trailing newline is allowed).
pub fn parse_graph6_bytes(line: &[u8], max_vertices: usize) -> Result<Graph> {
    let line = trim_line_end(line);
    let start = if line.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let (n, used) = read_size(line, start)?;
    let body_at = start + used;
    let body = &line[body_at..];

    let bits = u128::from(n) * u128::from(n.saturating_sub(1)) / 2;
    let need = bits.div_ceil(6);
    if (body.len() as u128) < need {
        return Err(Error::parse(
            line.len(),
            format!("truncated: expected {need} data bytes, found {}", body.len()),
        ));
    }
    if body.len() as u128 > need {
        return Err(Error::parse(
            body_at + need as usize,
            "trailing bytes after graph6 data",
        ));
    }
    let n = checked_order(n, max_vertices, start)?;
    if let Some(k) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(
            body_at + k,
            format!("byte {:#04x} outside [63, 126]", body[k]),
        ));
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.set(i, j, true);
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) && (body[k / 6] - 63) & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(Error::parse(body_at + k / 6, "nonzero padding bits"));
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    let mut out = String::new();
    write_size(&mut out, n)?;
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            k += 1;
            if k.is_multiple_of(6) {
                out.push((acc + 63) as char);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        out.push(((acc << (6 - k % 6)) + 63) as char);
    }
    Ok(out)
}

pub fn parse_sparse6(line: &str) -> Result<Graph> {
    parse_sparse6_bytes(line.as_bytes(), DEFAULT_MAX_VERTICES)
}

/// Decodes one sparse6 line. Loops and repeated edges are rejected, since
/// graphs here are simple; incremental (`;`) records are not supported.
pub fn parse_sparse6_bytes(line: &[u8], max_vertices: usize) -> Result<Graph> {
    let line = trim_line_end(line);
    let start = if line.starts_with(SPARSE6_HEADER) {
        SPARSE6_HEADER.len()
    } else {
        0
    };
    match line.get(start) {
        Some(b':') => {}
        Some(b';') => return Err(Error::parse(start, "incremental sparse6 is not supported")),
        _ => return Err(Error::parse(start, "sparse6 record must start with ':'")),
    }
    let (n64, used) = read_size(line, start + 1)?;
    let n = checked_order(n64, max_vertices, start + 1)?;
    let body_at = start + 1 + used;
    let body = &line[body_at..];
    if let Some(k) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(
            body_at + k,
            format!("byte {:#04x} outside [63, 126]", body[k]),
        ));
    }

    // Width of each vertex field: the bit length of n - 1.
    let width = (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize;
    let total = body.len() * 6;
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1;
    let mut g = Graph::empty(n);
    let mut v = 0usize;
    let mut k = 0usize;
    while k + 1 + width <= total {
        let b = bit(k);
        let mut x = 0usize;
        for q in 0..width {
            x = x << 1 | usize::from(bit(k + 1 + q));
        }
        k += 1 + width;
        if b == 1 {
            v += 1;
        }
        if x > v {
            v = x;
        } else if v < n {
            let at = body_at + (k - 1) / 6;
            if x == v {
                return Err(Error::parse(at, format!("loop at vertex {v}")));
            }
            if g.has_edge(x, v) {
                return Err(Error::parse(at, format!("repeated edge {{{x}, {v}}}")));
            }
            g.set(x, v, true);
        }
    }
    Ok(g)
}

/// Parses a single edge-list graph; anything after its last edge other than
/// blank or `#` lines is an error.
pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text.as_bytes());
    let Some(g) = read_edgelist(&mut lines, DEFAULT_MAX_VERTICES)? else {
        return Err(Error::parse_line(1, "missing 'n m' header"));
    };
    if let Some((no, _)) = lines.next_content()? {
        return Err(Error::parse_line(no, "trailing content after the last edge"));
    }
    Ok(g)
}

pub fn encode_edgelist(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Line source over an in-memory buffer or a reader, tracking line numbers.
struct Lines<R> {
    reader: R,
    line_no: usize,
    buf: Vec<u8>,
    pending: Option<(usize, Vec<u8>)>,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Lines {
            reader,
            line_no: 0,
            buf: Vec::new(),
            pending: None,
        }
    }

    /// Next line that is neither blank nor a `#` comment, trimmed.
    fn next_content(&mut self) -> Result<Option<(usize, Vec<u8>)>> {
        if let Some(line) = self.pending.take() {
            return Ok(Some(line));
        }
        loop {
            self.buf.clear();
            if self.reader.read_until(b'\n', &mut self.buf)? == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            let line = trim_line_end(&self.buf);
            if line.iter().all(u8::is_ascii_whitespace) || line.first() == Some(&b'#') {
                continue;
            }
            return Ok(Some((self.line_no, line.to_vec())));
        }
    }
}

fn parse_pair(line: &[u8], no: usize, what: &str) -> Result<(usize, usize)> {
    let text = std::str::from_utf8(line).map_err(|_| Error::parse_line(no, "line is not valid UTF-8"))?;
    let mut fields = text.split_ascii_whitespace().map(str::parse::<usize>);
    match (fields.next(), fields.next(), fields.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::parse_line(
            no,
            format!("malformed {what}: expected two non-negative integers"),
        )),
    }
}

fn read_edgelist<R: BufRead>(lines: &mut Lines<R>, max_vertices: usize) -> Result<Option<Graph>> {
    let Some((header_no, header)) = lines.next_content()? else {
        return Ok(None);
    };
    let (n, m) = parse_pair(&header, header_no, "header")?;
    if n > max_vertices {
        return Err(Error::parse_line(
            header_no,
            format!("order {n} exceeds decoder limit {max_vertices}"),
        ));
    }
    if m as u128 > (n as u128) * (n.saturating_sub(1) as u128) / 2 {
        return Err(Error::parse_line(
            header_no,
            format!("{m} edges cannot fit a simple graph on {n} vertices"),
        ));
    }
    let mut g = Graph::empty(n);
    for k in 0..m {
        let Some((no, line)) = lines.next_content()? else {
            return Err(Error::parse_line(
                lines.line_no + 1,
                format!("expected {m} edges, found {k}"),
            ));
        };
        let (u, v) = parse_pair(&line, no, "edge")?;
        if u >= n || v >= n {
            return Err(Error::parse_line(
                no,
                format!("vertex {} out of range for n = {n}", u.max(v)),
            ));
        }
        if u == v {
            return Err(Error::parse_line(no, format!("loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse_line(
                no,
                format!("duplicate edge {{{}, {}}}", u.min(v), u.max(v)),
            ));
        }
        g.set(u, v, true);
    }
    Ok(Some(g))
}

/// Lazily decodes graphs from a byte source, in order.
///
/// With no fixed format, the first content line decides between edge lists
/// and graph6/sparse6; graph6 and sparse6 lines may then be mixed. Blank
/// lines are skipped. The first malformed record is reported as an error
/// carrying its line number, after which the stream ends.
pub struct GraphStream<R> {
    lines: Lines<R>,
    format: Option<Format>,
    max_vertices: usize,
    done: bool,
}

pub fn stream_reader<R: Read>(source: R, format: Option<Format>) -> GraphStream<BufReader<R>> {
    GraphStream::new(BufReader::new(source), format)
}

impl<R: BufRead> GraphStream<R> {
    pub fn new(reader: R, format: Option<Format>) -> Self {
        GraphStream {
            lines: Lines::new(reader),
            format,
            max_vertices: DEFAULT_MAX_VERTICES,
            done: false,
        }
    }

    pub fn with_max_vertices(mut self, max_vertices: usize) -> Self {
        self.max_vertices = max_vertices;
        self
    }

    fn read_one(&mut self) -> Result<Option<GraphRecord>> {
        if self.format == Some(Format::Edgelist) {
            let Some(header) = self.lines.next_content()? else {
                return Ok(None);
            };
            let line = header.0;
            self.lines.pending = Some(header);
            return Ok(
                read_edgelist(&mut self.lines, self.max_vertices)?.map(|graph| GraphRecord {
                    graph,
                    source_line: Some(line),
                    format: Format::Edgelist,
                }),
            );
        }
        let Some((no, line)) = self.lines.next_content()? else {
            return Ok(None);
        };
        let format = match detect_format(&line) {
            Some(Format::Sparse6) => Format::Sparse6,
            Some(Format::Edgelist) => {
                return Err(Error::parse_line(
                    no,
                    "edge-list header where graph6/sparse6 was expected",
                ));
            }
            _ => Format::Graph6,
        };
        let parsed = match format {
            Format::Sparse6 => parse_sparse6_bytes(&line, self.max_vertices),
            _ => parse_graph6_bytes(&line, self.max_vertices),
        };
        let graph = parsed.map_err(|e| Error::parse_line(no, e.to_string()))?;
        Ok(Some(GraphRecord {
            graph,
            source_line: Some(no),
            format,
        }))
    }

    /// Decides the format from the first content line when none was given.
    fn settle_format(&mut self) -> Result<()> {
        if self.format.is_some() {
            return Ok(());
        }
        if let Some((no, line)) = self.lines.next_content()? {
            self.format = Some(match detect_format(&line) {
                Some(Format::Edgelist) => Format::Edgelist,
                _ => Format::Graph6,
            });
            self.lines.pending = Some((no, line));
        }
        Ok(())
    }
}

impl<R: BufRead> Iterator for GraphStream<R> {
    type Item = Result<GraphRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let result = self.settle_format().and_then(|()| self.read_one());
        match result {
            Ok(Some(rec)) => Some(Ok(rec)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Hand encoder used as the oracle: writes the upper-triangle bits
    /// column by column as a '0'/'1' string, then packs 6 at a time.
    fn oracle_graph6(g: &Graph) -> String {
        let n = g.order();
        assert!(n <= 62);
        let mut bits = String::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(if g.has_edge(i, j) { '1' } else { '0' });
            }
        }
        while !bits.len().is_multiple_of(6) {
            bits.push('0');
        }
        let mut out = String::from((n as u8 + 63) as char);
        for chunk in bits.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            out.push((v + 63) as char);
        }
        out
    }

    #[test]
    fn hand_encoded_examples() {
        let k3 = families::complete(3);
        let c5 = families::cycle(5).unwrap();
        assert_eq!(oracle_graph6(&k3), "Bw");
        assert_eq!(oracle_graph6(&c5), "Dhc");
        assert_eq!(encode_graph6(&k3).unwrap(), "Bw");
        assert_eq!(encode_graph6(&c5).unwrap(), "Dhc");
        assert_eq!(parse_graph6("Bw").unwrap(), k3);
        assert_eq!(parse_graph6("Dhc").unwrap(), c5);
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), k3);
        assert_eq!(parse_graph6("Bw\r\n").unwrap(), k3);
    }

    #[test]
    fn known_external_strings() {
        // Petersen graph as printed by networkx/nauty.
        let g = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(g.degrees().iter().all(|&d| d == 3));
        // The petgraph test vector: edges a-c, a-e, b-d, d-e on five vertices.
        let h = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&h).unwrap(), "DQc");
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert_eq!(
            parse_graph6("B"),
            Err(Error::parse(1, "truncated: expected 1 data bytes, found 0"))
        );
        assert!(matches!(parse_graph6("Bww"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_graph6("B\x7f"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6("Bx"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_graph6("B w"), Err(Error::Parse { .. })));
    }

    #[test]
    fn long_size_headers() {
        for n in [62usize, 63, 64, 100] {
            let g = families::cycle(n).unwrap();
            let s = encode_graph6(&g).unwrap();
            if n > 62 {
                assert!(s.starts_with('~'));
                assert!(!s.starts_with("~~"));
            }
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
        let mut out = String::new();
        write_size(&mut out, 258_048).unwrap();
        assert_eq!(out.len(), 8);
        assert_eq!(read_size(out.as_bytes(), 0).unwrap(), (258_048, 8));
        let mut out = String::new();
        write_size(&mut out, 258_047).unwrap();
        assert_eq!(read_size(out.as_bytes(), 0).unwrap(), (258_047, 4));
    }

    #[test]
    fn decoder_limit_blocks_huge_orders() {
        // 8-byte header claiming 2^35 vertices and no body.
        let s = "~~_?????";
        assert!(matches!(parse_graph6(s), Err(Error::Parse { .. })));
        assert!(matches!(parse_sparse6(":~~_?????"), Err(Error::Parse { .. })));
    }

    #[test]
    fn sparse6_known_strings() {
        // Example from the format description: n = 7, edges 0-1 0-2 1-2 5-6.
        let g = parse_sparse6(":Fa@x^").unwrap();
        assert_eq!(g, Graph::from_edges(7, [(0, 1), (0, 2), (1, 2), (5, 6)]).unwrap());
        assert_eq!(parse_sparse6(">>sparse6<<:Fa@x^\n").unwrap(), g);
        assert_eq!(parse_sparse6(":@").unwrap(), Graph::empty(1));
        assert_eq!(parse_sparse6(":?").unwrap(), Graph::empty(0));
        assert!(matches!(parse_sparse6(";Fa@x^"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_sparse6("Fa@x^"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn sparse6_rejects_multigraphs() {
        // n = 2, k = 1: units (b=0,x=0) loop at 0.
        assert!(matches!(parse_sparse6(":A?"), Err(Error::Parse { .. })));
    }

    #[test]
    fn edgelist_round_trip_and_errors() {
        let k3 = parse_edgelist("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(k3, families::complete(3));
        assert_eq!(encode_edgelist(&k3), "3 3\n0 1\n0 2\n1 2\n");
        assert_eq!(parse_edgelist("# triangle\n\n3 3\n0 1\n# c\n1 2\n0 2\n\n").unwrap(), k3);

        let line_of = |text: &str| match parse_edgelist(text) {
            Err(Error::ParseLine { line, .. }) => line,
            other => panic!("expected a line error, got {other:?}"),
        };
        assert_eq!(line_of("3\n"), 1);
        assert_eq!(line_of("3 2\n0 1\n0 1\n"), 3);
        assert_eq!(line_of("3 1\n1 1\n"), 2);
        assert_eq!(line_of("3 1\n0 3\n"), 2);
        assert_eq!(line_of("3 2\n0 1\n"), 3);
        assert_eq!(line_of("3 1\n0 1\n1 2\n"), 3);
        assert_eq!(line_of("2 5\n"), 1);
        assert_eq!(line_of("3 1\n0 x\n"), 2);
        assert_eq!(line_of(""), 1);
    }

    #[test]
    fn stream_auto_detects_and_numbers_lines() {
        let text = "Bw\n\nDhc\n:Fa@x^\n";
        let recs: Vec<_> = stream_reader(text.as_bytes(), None).collect::<Result<_>>().unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].source_line, Some(1));
        assert_eq!(recs[1].source_line, Some(3));
        assert_eq!(recs[2].format, Format::Sparse6);

        let edges = "\n# two graphs\n3 3\n0 1\n1 2\n0 2\n2 1\n0 1\n";
        let recs: Vec<_> = stream_reader(edges.as_bytes(), None).collect::<Result<_>>().unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].graph, families::complete(3));
        assert_eq!(recs[1].graph, families::path(2).unwrap());
        assert!(recs.iter().all(|r| r.format == Format::Edgelist));
    }

    #[test]
    fn stream_stops_at_first_bad_line() {
        let text = "Bw\nB!\nDhc\n";
        let mut it = stream_reader(text.as_bytes(), None);
        assert!(it.next().unwrap().is_ok());
        assert!(matches!(it.next(), Some(Err(Error::ParseLine { line: 2, .. }))));
        assert!(it.next().is_none());

        let mixed = "Bw\n3 0\n";
        let out: Vec<_> = stream_reader(mixed.as_bytes(), None).collect();
        assert!(matches!(out[1], Err(Error::ParseLine { line: 2, .. })));
    }

    #[test]
    fn exhaustive_round_trip_small() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u64..1 << pairs.len() {
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                let s = encode_graph6(&g).unwrap();
                assert_eq!(s, oracle_graph6(&g));
                assert_eq!(parse_graph6(&s).unwrap(), g);
                assert_eq!(parse_edgelist(&encode_edgelist(&g)).unwrap(), g);
            }
        }
    }
}
