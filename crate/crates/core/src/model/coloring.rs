use thiserror::Error;

use super::{SimpleGraph, ThreeGraph, Triad};

/// A vertex coloring with `r` declared colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    r: usize,
    colors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {vertex} has color {color}, but only {r} colors are declared")]
    ColorOutOfRange { vertex: usize, color: usize, r: usize },
    #[error("coloring assigns {found} vertices, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("a coloring needs at least one color")]
    NoColors,
}

impl Coloring {
    pub fn new(r: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        if r == 0 && !colors.is_empty() {
            return Err(ColoringError::NoColors);
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= r) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, r });
        }
        Ok(Self { r, colors })
    }

    pub fn num_colors(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.r];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each color class in ascending vertex order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.r];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }
}

/// Reason a coloring was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    MonochromaticTriad(Triad),
    MonochromaticEdge(usize, usize),
    /// A class whose size is outside `[floor(n/r), ceil(n/r)]`.
    ClassSize { color: usize, size: usize, lo: usize, hi: usize },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::MonochromaticTriad([u, v, w]) => write!(f, "monochromatic triad {u} {v} {w}"),
            Witness::MonochromaticEdge(u, v) => write!(f, "monochromatic edge {u} {v}"),
            Witness::ClassSize { color, size, lo, hi } => {
                write!(f, "class {color} has size {size}, allowed {lo}..={hi}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub proper: bool,
    pub equitable: bool,
    /// First monochromatic edge or triad in canonical order.
    pub improper_witness: Option<Witness>,
    /// Lowest-indexed class with an illegal size.
    pub size_witness: Option<Witness>,
    pub class_sizes: Vec<usize>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.proper && self.equitable
    }

    /// The witness to report first: properness before size.
    pub fn witness(&self) -> Option<&Witness> {
        self.improper_witness.as_ref().or(self.size_witness.as_ref())
    }
}

/// Checks that no triad is monochromatic and that every class has size
/// `floor(n/r)` or `ceil(n/r)`.
pub fn verify_coloring(h: &ThreeGraph, c: &Coloring) -> Result<Verdict, ColoringError> {
    check_shape(h.n(), c)?;
    let improper_witness = h
        .triads()
        .iter()
        .find(|t| c.color(t[0]) == c.color(t[1]) && c.color(t[1]) == c.color(t[2]))
        .map(|&t| Witness::MonochromaticTriad(t));
    Ok(finish(h.n(), c, improper_witness))
}

/// Same as [`verify_coloring`] with graph edges as the forbidden sets.
pub fn verify_graph_coloring(g: &SimpleGraph, c: &Coloring) -> Result<Verdict, ColoringError> {
    check_shape(g.n(), c)?;
    let improper_witness = g
        .edges()
        .find(|&(u, v)| c.color(u) == c.color(v))
        .map(|(u, v)| Witness::MonochromaticEdge(u, v));
    Ok(finish(g.n(), c, improper_witness))
}

fn check_shape(n: usize, c: &Coloring) -> Result<(), ColoringError> {
    if c.len() != n {
        return Err(ColoringError::LengthMismatch { expected: n, found: c.len() });
    }
    if c.num_colors() == 0 && n > 0 {
        return Err(ColoringError::NoColors);
    }
    Ok(())
}

fn finish(n: usize, c: &Coloring, improper_witness: Option<Witness>) -> Verdict {
    let r = c.num_colors().max(1);
    let lo = n / r;
    let hi = n.div_ceil(r);
    let class_sizes = c.class_sizes();
    let size_witness = class_sizes
        .iter()
        .enumerate()
        .find(|(_, &size)| size < lo || size > hi)
        .map(|(color, &size)| Witness::ClassSize { color, size, lo, hi });
    Verdict {
        proper: improper_witness.is_none(),
        equitable: size_witness.is_none(),
        improper_witness,
        size_witness,
        class_sizes,
    }
}
