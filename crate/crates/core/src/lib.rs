//! Equitable colorings of 3-uniform hypergraphs with bounded maximum degree.
//!
//! The crate is organised around five pieces:
//!
//! * [`model`]: triple systems, simple graphs, the mixed cover digraph and the
//!   coloring verifier.
//! * [`lll`]: a Moser–Tardos resampling engine over finite-domain variables.
//! * [`equitable`]: equitable `r`-coloring of graphs with `r > Δ`.
//! * [`pipeline`]: the three-phase partition / absorb / balance algorithm with
//!   the cover-graph fallback.
//! * [`tools`]: instance generators, the text formats and the benchmark
//!   harness used by the command-line front end.

pub mod equitable;
pub mod lll;
pub mod model;
pub mod pipeline;
pub mod tools;

pub use equitable::{equitable_color, EquitableError};
pub use lll::{resample_until_clear, BadEvent, CapExceeded, ResampleLog, VariableSpace};
pub use model::{
    verify_coloring, verify_graph_coloring, Coloring, ColoringError, EdgeClassification,
    MixedCover, ModelError, SimpleGraph, ThreeGraph, Triad, Verdict, Witness,
};
pub use pipeline::{color_equitably, plan_sizes, Outcome, PipelineConfig, PipelineError, Route};
