//! Text formats: HGF v1 for Hoffman graphs and decompositions, graph6 for
//! slim graphs.
//!
//! HGF v1 is line based and written bit-exactly:
//!
//! ```text
//! c optional comments, only before the problem line
//! p hgf 1 <slim_count> <fat_count>
//! e <u> <v>          one per edge, u < v, sorted by (u, v)
//! a <slim ids...>    decompositions only, one per addend
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{HoffmanGraph, SlimGraph, VertexId};
use crate::sum::Decomposition;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Serializes a graph as HGF v1.
pub fn write_hgf(g: &HoffmanGraph) -> String {
    let mut out = format!("p hgf 1 {} {}\n", g.slim_count(), g.fat_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Serializes a decomposition as its parent's HGF followed by one `a` line per
/// addend, addends ordered by smallest slim vertex.
pub fn write_decomposition(d: &Decomposition) -> String {
    let mut out = write_hgf(d.parent());
    for part in d.parts() {
        out.push('a');
        for x in part {
            let _ = write!(out, " {x}");
        }
        out.push('\n');
    }
    out
}

struct Parsed {
    graph: HoffmanGraph,
    addends: Vec<Vec<VertexId>>,
}

fn parse(text: &str, allow_addends: bool) -> Result<Parsed> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut addends = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let lineno = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        let tag = tokens.next().unwrap_or("");
        let nums = |tokens: std::str::SplitAsciiWhitespace<'_>| -> Result<Vec<usize>> {
            tokens
                .map(|t| t.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad integer `{t}`"))))
                .collect()
        };
        match (tag, header) {
            ("c", None) => {}
            ("c", Some(_)) => return Err(parse_err(lineno, "comment after problem line")),
            ("p", None) => {
                if tokens.next() != Some("hgf") || tokens.next() != Some("1") {
                    return Err(parse_err(lineno, "expected `p hgf 1 <slim> <fat>`"));
                }
                let v = nums(tokens)?;
                if v.len() != 2 {
                    return Err(parse_err(lineno, "expected `p hgf 1 <slim> <fat>`"));
                }
                header = Some((v[0], v[1]));
            }
            ("p", Some(_)) => return Err(parse_err(lineno, "duplicate problem line")),
            (_, None) => return Err(parse_err(lineno, "missing problem line")),
            ("e", Some(_)) => {
                let v = nums(tokens)?;
                if v.len() != 2 {
                    return Err(parse_err(lineno, "expected `e <u> <v>`"));
                }
                edges.push((v[0], v[1]));
            }
            ("a", Some(_)) if allow_addends => addends.push(nums(tokens)?),
            (other, Some(_)) => return Err(parse_err(lineno, format!("unknown line tag `{other}`"))),
        }
    }
    let (slim, fat) = header.ok_or_else(|| parse_err(0, "missing problem line"))?;
    Ok(Parsed {
        graph: HoffmanGraph::new(slim, fat, &edges)?,
        addends,
    })
}

/// Parses and validates an HGF v1 document.
pub fn read_hgf(text: &str) -> Result<HoffmanGraph> {
    parse(text, false).map(|p| p.graph)
}

/// Parses a decomposition document and checks that its addend lines form a
/// valid sum of the parent.
pub fn read_decomposition(text: &str) -> Result<Decomposition> {
    let p = parse(text, true)?;
    Decomposition::from_parts(p.graph, p.addends)
}

fn write_size(out: &mut Vec<u8>, n: usize) {
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

/// Encodes a slim graph in graph6, without header or trailing newline.
pub fn write_graph6(g: &SlimGraph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    write_size(&mut out, n);
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adjacent(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decodes one graph6 line. Accepts an optional `>>graph6<<` header.
pub fn read_graph6(text: &str) -> Result<SlimGraph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, "graph6 byte out of range"));
    }
    let digit = |i: usize| -> Result<usize> {
        bytes
            .get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| parse_err(1, "truncated graph6 size"))
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(parse_err(1, "empty graph6 string")),
        Some(126) if bytes.get(1) == Some(&126) => {
            let mut n = 0;
            for i in 2..8 {
                n = n << 6 | digit(i)?;
            }
            (n, 8)
        }
        Some(126) => {
            let mut n = 0;
            for i in 1..4 {
                n = n << 6 | digit(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() != pos + need {
        return Err(parse_err(1, format!("expected {need} data bytes, found {}", bytes.len() - pos)));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            if k == bits {
                break 'outer;
            }
            let byte = bytes[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    pos += need;
    debug_assert_eq!(pos, bytes.len());
    SlimGraph::new(n, &edges)
}
