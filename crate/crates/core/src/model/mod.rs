//! Core data model shared by every other module.

mod coloring;
mod cover;
mod graph;
mod hypergraph;

pub use coloring::{verify_coloring, verify_graph_coloring, Coloring, ColoringError, Verdict, Witness};
pub use cover::MixedCover;
pub use graph::SimpleGraph;
pub use hypergraph::{EdgeClassification, ThreeGraph, Triad};

use thiserror::Error;

/// Construction errors for [`ThreeGraph`], [`SimpleGraph`] and [`MixedCover`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("triad {triad:?} does not have three distinct vertices")]
    DegenerateTriad { triad: [usize; 3] },
    #[error("duplicate triad {triad:?}")]
    DuplicateTriad { triad: [usize; 3] },
    #[error("vertex {vertex} lies in {degree} triads, above the declared bound {bound}")]
    DegreeExceeded { vertex: usize, degree: usize, bound: usize },
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("diedge ({u},{v}) is both strong and weak")]
    OverlappingDiedge { u: usize, v: usize },
    #[error("label vector has length {found}, expected {expected}")]
    LabelLength { expected: usize, found: usize },
}
