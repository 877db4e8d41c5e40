//! Line-oriented text formats for instances and colorings.
//!
//! Instance: optional `#` comment lines, a header `p3g <n> <m>`, then `m`
//! lines `u v w` with 0-based vertex indices. Coloring: `n` lines holding
//! one color each, optionally followed by a `# r=<r> sizes=<list>` summary.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{Coloring, ThreeGraph, Triad};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: expected 3 vertices, found {found}")]
    Arity { line: usize, found: usize },
    #[error("line {line}: triad {triad:?} repeats line {first}")]
    DuplicateTriad { line: usize, first: usize, triad: Triad },
    #[error("line {line}: triad {triad:?} repeats a vertex")]
    DegenerateTriad { line: usize, triad: [usize; 3] },
    #[error("header declares {declared} triads, found {found}")]
    TriadCount { declared: usize, found: usize },
    #[error("missing header line `p3g <n> <m>`")]
    MissingHeader,
    #[error("expected {expected} colors, found {found}")]
    ColorCount { expected: usize, found: usize },
}

fn number(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Syntax { line, message: format!("`{tok}` is not a non-negative integer") })
}

pub fn parse_instance(text: &str) -> Result<ThreeGraph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (n, m) = loop {
        let Some((line, l)) = lines.next() else { return Err(ParseError::MissingHeader) };
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "p3g" {
            return Err(ParseError::Syntax { line, message: "expected header `p3g <n> <m>`".into() });
        }
        break (number(toks[1], line)?, number(toks[2], line)?);
    };

    let mut first_seen: HashMap<Triad, usize> = HashMap::with_capacity(m);
    let mut triads = Vec::with_capacity(m);
    for (line, l) in lines {
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(ParseError::Arity { line, found: toks.len() });
        }
        let mut t = [0usize; 3];
        for (slot, tok) in t.iter_mut().zip(&toks) {
            *slot = number(tok, line)?;
            if *slot >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex: *slot, n });
            }
        }
        let raw = t;
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(ParseError::DegenerateTriad { line, triad: raw });
        }
        if let Some(&first) = first_seen.get(&t) {
            return Err(ParseError::DuplicateTriad { line, first, triad: t });
        }
        first_seen.insert(t, line);
        triads.push(t);
    }
    if triads.len() != m {
        return Err(ParseError::TriadCount { declared: m, found: triads.len() });
    }
    Ok(ThreeGraph::new(n, triads).expect("triads validated above"))
}

/// Canonical form: header then triads in lexicographic order.
pub fn write_instance(h: &ThreeGraph) -> String {
    let mut out = String::with_capacity(16 + 12 * h.num_triads());
    writeln!(out, "p3g {} {}", h.n(), h.num_triads()).unwrap();
    for t in h.triads() {
        writeln!(out, "{} {} {}", t[0], t[1], t[2]).unwrap();
    }
    out
}

/// Colors in vertex order; comment and blank lines are skipped.
pub fn parse_coloring(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut colors = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 1 {
            return Err(ParseError::Syntax { line: i + 1, message: "expected a single color".into() });
        }
        colors.push(number(toks[0], i + 1)?);
    }
    Ok(colors)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = String::with_capacity(4 * c.len() + 32);
    for &col in c.colors() {
        writeln!(out, "{col}").unwrap();
    }
    let sizes: Vec<String> = c.class_sizes().iter().map(usize::to_string).collect();
    writeln!(out, "# r={} sizes={}", c.num_colors(), sizes.join(",")).unwrap();
    out
}
