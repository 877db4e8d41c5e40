//! Random `t`-partition with bounded weak-triad and strong-edge counts, and
//! the mixed cover digraph built on top of it.

use crate::lll::{default_cap, derive_seed, resample_until_clear, BadEvent, LllError, ResampleLog, VariableSpace};
use crate::model::{EdgeClassification, MixedCover, ThreeGraph, Triad};

use super::{PipelineConfig, PipelineError};

/// Partition labels, the cover digraph and the engine log.
#[derive(Debug, Clone)]
pub struct Phase1Result {
    pub cover: MixedCover,
    pub classification: EdgeClassification,
    pub log: ResampleLog,
    /// Engine calls made, including the successful one.
    pub attempts: usize,
}

impl Phase1Result {
    pub fn labels(&self) -> &[usize] {
        self.cover.labels()
    }

    /// Vertices of each part, ascending.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.cover.parts()];
        for (v, &l) in self.cover.labels().iter().enumerate() {
            parts[l].push(v);
        }
        parts
    }
}

/// First structural property that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralViolation {
    /// A triad inside `X_i ∪ X_j` with no pair adjacent in the cover.
    Uncovered { triad: Triad },
    /// `v` has `degree >= p - 1` diedges into part `part`.
    OutDegree { vertex: usize, part: usize, degree: usize },
    /// `v` has `degree >= p - 1` undirected neighbors inside its own part.
    IntraDegree { vertex: usize, degree: usize },
}

/// Runs the resampling engine on the `A`/`D` events and builds the cover.
pub fn phase1_partition(h: &ThreeGraph, cfg: &PipelineConfig, seed: u64) -> Result<Phase1Result, PipelineError> {
    if cfg.d < cfg.d_gate {
        return Err(PipelineError::Precondition(format!(
            "maximum degree {} is below the pipeline gate {}",
            cfg.d, cfg.d_gate
        )));
    }
    let classification = h.classify_edges(cfg.a);
    let space = VariableSpace::uniform(h.n(), cfg.t).expect("t >= 1");
    let events = partition_events(h, &classification, cfg);
    let cap = cfg.resample_cap.unwrap_or_else(|| default_cap(events.len()));

    let mut attempts = 0;
    let (labels, log) = loop {
        let attempt_seed = derive_seed(seed, attempts as u64);
        attempts += 1;
        match resample_until_clear(&space, &events, attempt_seed, cap) {
            Ok(found) => break found,
            Err(LllError::CapExceeded { .. }) if attempts <= cfg.phase_retries => continue,
            Err(e) => return Err(PipelineError::Resample { phase: 1, source: e }),
        }
    };
    let cover = build_mixed_cover(h, &classification, labels, cfg.t);
    Ok(Phase1Result { cover, classification, log, attempts })
}

/// `A_{v,i}`: at least `weak_triad_budget` weak triads `vxy` with both `x`
/// and `y` in part `i`. `D_{v,i}`: at least `strong_edge_budget` strong
/// neighbors of `v` in part `i`. Events that cannot fire are omitted.
pub fn partition_events(h: &ThreeGraph, cl: &EdgeClassification, cfg: &PipelineConfig) -> Vec<BadEvent> {
    let n = h.n();
    let mut weak_links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (t, &strong) in h.triads().iter().zip(&cl.triad_is_strong) {
        if strong {
            continue;
        }
        for (k, &v) in t.iter().enumerate() {
            let mut others = t.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x);
            weak_links[v].push((others.next().unwrap(), others.next().unwrap()));
        }
    }
    let mut strong_nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &cl.strong {
        strong_nbrs[u].push(v);
        strong_nbrs[v].push(u);
    }

    let weak_budget = cfg.weak_triad_budget;
    let strong_budget = cfg.strong_edge_budget;
    let mut events = Vec::new();
    for v in 0..n {
        if weak_links[v].len() as f64 >= weak_budget {
            let mut scope: Vec<usize> = weak_links[v].iter().flat_map(|&(x, y)| [x, y]).collect();
            scope.sort_unstable();
            scope.dedup();
            let pairs: Vec<(usize, usize)> = weak_links[v]
                .iter()
                .map(|&(x, y)| (scope.binary_search(&x).unwrap(), scope.binary_search(&y).unwrap()))
                .collect();
            for part in 0..cfg.t {
                let pairs = pairs.clone();
                events.push(BadEvent::new(format!("A(v={v},i={part})"), scope.clone(), move |vals| {
                    let hits = pairs.iter().filter(|&&(x, y)| vals[x] == part && vals[y] == part).count();
                    hits as f64 >= weak_budget
                }));
            }
        }
        if strong_nbrs[v].len() as f64 >= strong_budget {
            let mut scope = strong_nbrs[v].clone();
            scope.sort_unstable();
            for part in 0..cfg.t {
                events.push(BadEvent::new(format!("D(v={v},i={part})"), scope.clone(), move |vals| {
                    vals.iter().filter(|&&x| x == part).count() as f64 >= strong_budget
                }));
            }
        }
    }
    events
}

/// Strong pairs in both orientations plus `(v,x)` and `(v,y)` for every weak
/// triad `vxy` whose other two vertices share a part.
pub fn build_mixed_cover(h: &ThreeGraph, cl: &EdgeClassification, labels: Vec<usize>, parts: usize) -> MixedCover {
    let mut weak = Vec::new();
    for (t, &strong) in h.triads().iter().zip(&cl.triad_is_strong) {
        if strong {
            continue;
        }
        for k in 0..3 {
            let v = t[k];
            let x = t[(k + 1) % 3];
            let y = t[(k + 2) % 3];
            if labels[x] == labels[y] {
                weak.push((v, x));
                weak.push((v, y));
            }
        }
    }
    MixedCover::new(labels, parts, cl.strong.iter().copied(), weak)
        .expect("weak pairs never coincide with strong pairs")
}

/// Checks the two-part cover property and both degree bounds against `p`.
pub fn check_structural(h: &ThreeGraph, result: &Phase1Result, cfg: &PipelineConfig) -> Result<(), StructuralViolation> {
    let cover = &result.cover;
    let labels = cover.labels();
    for t in h.triads() {
        let distinct = {
            let mut l = [labels[t[0]], labels[t[1]], labels[t[2]]];
            l.sort_unstable();
            1 + (l[0] != l[1]) as usize + (l[1] != l[2]) as usize
        };
        if distinct == 3 {
            continue;
        }
        let covered = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
            .iter()
            .any(|&(u, v)| cover.has_diedge(u, v) || cover.has_diedge(v, u));
        if !covered {
            return Err(StructuralViolation::Uncovered { triad: *t });
        }
    }
    let limit = cfg.p.saturating_sub(1);
    let mut per_part = vec![0usize; cover.parts()];
    for v in 0..cover.n() {
        per_part.iter_mut().for_each(|c| *c = 0);
        for w in cover.out_neighbors(v) {
            per_part[labels[w]] += 1;
        }
        if let Some((part, &degree)) = per_part.iter().enumerate().find(|(_, &c)| c >= limit) {
            return Err(StructuralViolation::OutDegree { vertex: v, part, degree });
        }
        let own = labels[v];
        let degree = cover.undirected_neighbors(v).iter().filter(|&&w| labels[w] == own).count();
        if degree >= limit {
            return Err(StructuralViolation::IntraDegree { vertex: v, degree });
        }
    }
    Ok(())
}
