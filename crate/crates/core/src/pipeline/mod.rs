//! Equitable coloring of a 3-graph: the partition / absorb / balance
//! pipeline and the cover-graph fallback.
//!
//! The pipeline runs in three phases:
//!
//! 1. [`phase1_partition`] splits the vertices into `t = ceil(sqrt d)` parts
//!    so that no vertex sees many weak triads or strong pairs inside a part,
//!    and builds the mixed cover digraph `H`.
//! 2. [`phase2_absorb`] cuts the large parts into size-`s` independent blocks,
//!    distributes the vertices of small parts over those blocks and keeps a
//!    leftover block `U_i` per large part.
//! 3. [`phase3_balance`] shifts a few vertices between consecutive leftover
//!    blocks so each one splits into planned classes, then colors them.
//!
//! The fallback colors a cover graph of maximum degree at most `d`
//! equitably. Whatever path is taken, the result is verified before it is
//! returned.

mod config;
pub mod phase1;
pub mod phase2;
pub mod phase3;

pub use config::{plan_sizes, PipelineConfig, Route, SizePlan, DESK_SCALE, FULL_SCALE_DEGREE_GATE};
pub use phase1::{build_mixed_cover, check_structural, phase1_partition, Phase1Result, StructuralViolation};
pub use phase2::{phase2_absorb, Phase2Result};
pub use phase3::{phase3_balance, select_shift_sets, Phase3Result, ShiftRecord};

use thiserror::Error;

use crate::equitable::{equitable_color, EquitableError};
use crate::lll::{derive_seed, LllError};
use crate::model::{verify_coloring, Coloring, MixedCover, ThreeGraph, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pipeline not applicable: {0}")]
    NotApplicable(String),
    #[error("phase {phase} resampling failed: {source}")]
    Resample { phase: u8, source: LllError },
    #[error("vertex {vertex} has only {size} admissible blocks (need at least {bound})")]
    IndexSetTooSmall { vertex: usize, size: usize, bound: usize },
    #[error("needed {needed} qualifying shift vertices, found {available}")]
    ShiftCounting { needed: usize, available: usize },
    #[error("structural check failed: {0:?}")]
    Structural(StructuralViolation),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
    #[error(transparent)]
    Equitable(#[from] EquitableError),
    #[error("gave up after {attempts} pipeline attempts; last error: {last}")]
    RetriesExhausted { attempts: usize, last: Box<PipelineError> },
    #[error("result failed verification: {0}")]
    Verification(Witness),
}

impl PipelineError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Precondition(_) | PipelineError::Equitable(EquitableError::DegreeTooLarge { .. }) => 2,
            PipelineError::Verification(_) => 3,
            _ => 4,
        }
    }
}

/// The path that produced a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    Fallback,
    Pipeline,
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Path::Fallback => "fallback",
            Path::Pipeline => "pipeline",
        })
    }
}

/// Intermediate results of a successful pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineTrace {
    pub phase1: Phase1Result,
    pub phase2: Phase2Result,
    pub phase3: Phase3Result,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub coloring: Coloring,
    pub path: Path,
    /// Pipeline attempts made (zero on a direct fallback).
    pub attempts: usize,
    pub trace: Option<PipelineTrace>,
}

impl Outcome {
    /// Resamples performed by the two engine phases of the successful run.
    pub fn resamples(&self) -> (u64, u64) {
        self.trace
            .as_ref()
            .map(|t| (t.phase1.log.total_resamples, t.phase2.log.total_resamples))
            .unwrap_or((0, 0))
    }
}

/// Equitable `cfg.r`-coloring of `h`.
pub fn color_equitably(h: &ThreeGraph, cfg: &PipelineConfig) -> Result<Outcome, PipelineError> {
    let r = cfg.r;
    if r == 0 {
        return Err(PipelineError::Precondition("at least one color is required".into()));
    }
    if cfg.n != h.n() {
        return Err(PipelineError::Precondition(format!("config is for n={}, input has n={}", cfg.n, h.n())));
    }
    let d = h.max_degree();
    let cover = h.select_cover();
    let cover_degree = cover.max_degree();
    let fallback_ok = r > cover_degree;

    let run_fallback = || -> Result<Outcome, PipelineError> {
        let coloring = equitable_color(&cover, r)?;
        finalize(h, coloring, Path::Fallback, 0, None)
    };

    match cfg.route {
        Route::ForceFallback => {
            if !fallback_ok {
                return Err(PipelineError::Precondition(format!(
                    "fallback needs r > Δ(cover) = {cover_degree}, got r = {r}"
                )));
            }
            run_fallback()
        }
        Route::ForcePipeline => run_pipeline(h, cfg),
        Route::Auto => {
            if d < cfg.d_gate || r > d {
                if fallback_ok {
                    return run_fallback();
                }
                return Err(PipelineError::Precondition(format!(
                    "r = {r} is not above Δ(cover) = {cover_degree}, and the pipeline gate fails \
                     (d = {d}, gate {}, needs r <= d)",
                    cfg.d_gate
                )));
            }
            match run_pipeline(h, cfg) {
                Ok(outcome) => Ok(outcome),
                Err(_) if fallback_ok => run_fallback(),
                Err(e) => Err(e),
            }
        }
    }
}

fn run_pipeline(h: &ThreeGraph, cfg: &PipelineConfig) -> Result<Outcome, PipelineError> {
    if cfg.n < cfg.r {
        return Err(PipelineError::Precondition(format!("pipeline needs n >= r (n = {}, r = {})", cfg.n, cfg.r)));
    }
    if cfg.t < 2 || cfg.d < 2 {
        return Err(PipelineError::Precondition(format!("pipeline needs d >= 2 (d = {})", cfg.d)));
    }
    if cfg.d != h.max_degree() {
        return Err(PipelineError::Precondition(format!(
            "config declares d = {}, input has maximum degree {}",
            cfg.d,
            h.max_degree()
        )));
    }
    let mut last = None;
    for attempt in 0..=cfg.max_retries {
        let seed = derive_seed(cfg.seed, 1000 + attempt as u64);
        match pipeline_once(h, cfg, seed) {
            Ok((coloring, trace)) => return finalize(h, coloring, Path::Pipeline, attempt + 1, Some(trace)),
            Err(e @ PipelineError::Precondition(_)) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    Err(PipelineError::RetriesExhausted { attempts: cfg.max_retries + 1, last: Box::new(last.unwrap()) })
}

/// One pass of the three phases with phase seeds derived from `seed`.
pub fn pipeline_once(
    h: &ThreeGraph,
    cfg: &PipelineConfig,
    seed: u64,
) -> Result<(Coloring, PipelineTrace), PipelineError> {
    let p1 = phase1_partition(h, cfg, derive_seed(seed, 1))?;
    check_structural(h, &p1, cfg).map_err(PipelineError::Structural)?;
    let mut plan = SizePlan::new(cfg);
    let p2 = phase2_absorb(h, &p1, cfg, &mut plan, derive_seed(seed, 2))?;
    let p3 = phase3_balance(&p2, &p1.cover, cfg, &mut plan)?;

    let mut colors = vec![usize::MAX; h.n()];
    for (c, class) in p2.finished.iter().chain(&p3.classes).enumerate() {
        for &v in class {
            if colors[v] != usize::MAX {
                return Err(PipelineError::Invariant(format!("vertex {v} placed twice")));
            }
            colors[v] = c;
        }
    }
    if let Some(v) = colors.iter().position(|&c| c == usize::MAX) {
        return Err(PipelineError::Invariant(format!("vertex {v} never placed")));
    }
    let coloring = Coloring::new(cfg.r, colors).map_err(|e| PipelineError::Invariant(e.to_string()))?;
    Ok((coloring, PipelineTrace { phase1: p1, phase2: p2, phase3: p3 }))
}

fn finalize(
    h: &ThreeGraph,
    coloring: Coloring,
    path: Path,
    attempts: usize,
    trace: Option<PipelineTrace>,
) -> Result<Outcome, PipelineError> {
    let verdict = verify_coloring(h, &coloring).map_err(|e| PipelineError::Invariant(e.to_string()))?;
    if let Some(w) = verdict.witness() {
        return Err(PipelineError::Verification(w.clone()));
    }
    Ok(Outcome { coloring, path, attempts, trace })
}

/// Equitably colors the undirected cover induced on `vertices` into classes
/// whose sizes are exactly `sizes` (up to order), larger classes first.
pub(crate) fn color_block(
    cover: &MixedCover,
    vertices: &[usize],
    sizes: &[usize],
) -> Result<Vec<Vec<usize>>, PipelineError> {
    let total: usize = sizes.iter().sum();
    if total != vertices.len() {
        return Err(PipelineError::Invariant(format!(
            "block of {} vertices cannot fill classes totalling {total}",
            vertices.len()
        )));
    }
    if vertices.is_empty() {
        return Ok(vec![Vec::new(); sizes.len()]);
    }
    let g = cover.induced_undirected(vertices);
    let coloring = equitable_color(&g, sizes.len())?;
    let mut classes: Vec<Vec<usize>> =
        coloring.classes().into_iter().map(|c| c.into_iter().map(|i| vertices[i]).collect()).collect();
    classes.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut wanted = sizes.to_vec();
    wanted.sort_unstable_by(|a, b| b.cmp(a));
    if classes.iter().map(Vec::len).ne(wanted.iter().copied()) {
        return Err(PipelineError::Invariant("block coloring does not match the planned sizes".into()));
    }
    // Hand the classes out in plan order.
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&i, &j| sizes[j].cmp(&sizes[i]).then(i.cmp(&j)));
    let mut out = vec![Vec::new(); sizes.len()];
    for (slot, class) in order.into_iter().zip(classes) {
        out[slot] = class;
    }
    Ok(out)
}
