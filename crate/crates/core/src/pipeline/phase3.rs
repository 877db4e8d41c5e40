//! Balancing the leftover blocks `U_i` so that each can be cut into classes
//! of the planned sizes, by shifting a few vertices from each block into the
//! next.

use crate::model::MixedCover;

use super::config::SizePlan;
use super::phase2::Phase2Result;
use super::{color_block, PipelineConfig, PipelineError};

/// What happened while handling block `i` (0-based) of the shifting loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftRecord {
    pub block: usize,
    pub rho: usize,
    /// Planned size of the class after the cut at which `M_i` ends.
    pub next_class_size: usize,
    pub q_len: usize,
    pub p_next_len: usize,
    /// `|Q_i ∪ P_{i+1}|` and the planned total for it (`4ps` when `r | n`).
    pub shift_len: usize,
    pub shift_target: usize,
    /// `Q_i ∪ P_{i+1}`, ascending.
    pub shift_set: Vec<usize>,
    /// Maximum degree of the undirected cover on `Q_i ∪ P_{i+1}`.
    pub shift_max_degree: usize,
    /// `|M_i|` where `M_i = U_i \ (P_i ∪ Q_i)`.
    pub remainder_len: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Phase3Result {
    /// Classes covering `U`, in plan order.
    pub classes: Vec<Vec<usize>>,
    pub records: Vec<ShiftRecord>,
    /// Whether any block needed shifting.
    pub shifted: bool,
}

/// `Q ⊆ P` of size `rho` whose members receive fewer than `2p` diedges from
/// `P'`, then `P_next ⊆ P'` of size `target - rho` whose members receive
/// fewer than `2p` diedges from `Q`. Both pick the lowest-numbered
/// qualifying vertices.
pub fn select_shift_sets(
    p_set: &[usize],
    p_prime: &[usize],
    rho: usize,
    target: usize,
    cover: &MixedCover,
    p: usize,
) -> Result<(Vec<usize>, Vec<usize>), PipelineError> {
    let in_from = |v: usize, sources: &[usize]| -> usize {
        cover.in_neighbors(v).iter().filter(|u| sources.binary_search(u).is_ok()).count()
    };
    let mut sorted_prime = p_prime.to_vec();
    sorted_prime.sort_unstable();
    let mut candidates = p_set.to_vec();
    candidates.sort_unstable();
    let q: Vec<usize> = candidates
        .into_iter()
        .filter(|&v| in_from(v, &sorted_prime) < 2 * p)
        .take(rho)
        .collect();
    if q.len() < rho {
        return Err(PipelineError::ShiftCounting { needed: rho, available: q.len() });
    }
    let need = target.checked_sub(rho).ok_or(PipelineError::ShiftCounting { needed: rho, available: target })?;
    let mut sorted_q = q.clone();
    sorted_q.sort_unstable();
    let p_next: Vec<usize> = sorted_prime
        .into_iter()
        .filter(|&v| in_from(v, &sorted_q) < 2 * p)
        .take(need)
        .collect();
    if p_next.len() < need {
        return Err(PipelineError::ShiftCounting { needed: need, available: p_next.len() });
    }
    Ok((q, p_next))
}

pub fn phase3_balance(
    p2: &Phase2Result,
    cover: &MixedCover,
    cfg: &PipelineConfig,
    plan: &mut SizePlan,
) -> Result<Phase3Result, PipelineError> {
    let blocks = &p2.u_blocks;
    let mut out = Phase3Result::default();

    // Blocks that already end on class boundaries are colored directly.
    let mut probe = plan.clone();
    let aligned = blocks.iter().all(|u| {
        let (k, total) = probe.fit(u.len());
        probe.take(k);
        total == u.len()
    });
    if aligned {
        for u in blocks {
            let (k, _) = plan.fit(u.len());
            let sizes = plan.take(k);
            out.classes.extend(color_block(cover, u, &sizes)?);
        }
        return finish(out, plan);
    }

    out.shifted = true;
    let ps = cfg.ps();
    let t0 = blocks.len();
    let mut carried: Vec<usize> = Vec::new(); // P_i
    for i in 0..t0 {
        let in_carried = |v: &usize| carried.binary_search(v).is_ok();
        let available: Vec<usize> = blocks[i].iter().copied().filter(|v| !in_carried(v)).collect();
        if i + 1 == t0 {
            let sizes = plan.take(plan.remaining());
            let total: usize = sizes.iter().sum();
            if total != available.len() {
                return Err(PipelineError::Invariant(format!(
                    "final block has {} vertices but {} remain planned",
                    available.len(),
                    total
                )));
            }
            out.classes.extend(color_block(cover, &available, &sizes)?);
            out.records.push(ShiftRecord {
                block: i,
                rho: 0,
                next_class_size: 0,
                q_len: 0,
                p_next_len: 0,
                shift_len: 0,
                shift_target: 0,
                shift_set: Vec::new(),
                shift_max_degree: 0,
                remainder_len: available.len(),
            });
            break;
        }

        let (k, total) = plan.fit(available.len());
        let rho = available.len() - total;
        let remainder_sizes = plan.take(k);
        let next_class_size = plan.next_size().unwrap_or(0);
        if next_class_size > 0 && rho >= next_class_size {
            return Err(PipelineError::Invariant(format!("rho {rho} is not below the class size")));
        }
        let shift_classes = (4 * cfg.p).min(plan.remaining());
        let shift_target = plan.sum_next(shift_classes);

        let p_set: Vec<usize> = available.iter().copied().take(8 * ps).collect();
        let p_prime: Vec<usize> = blocks[i + 1].iter().copied().take(8 * ps).collect();
        let (q, p_next) = select_shift_sets(&p_set, &p_prime, rho, shift_target, cover, cfg.p)?;

        let mut q_sorted = q.clone();
        q_sorted.sort_unstable();
        let remainder: Vec<usize> =
            available.iter().copied().filter(|v| q_sorted.binary_search(v).is_err()).collect();
        if remainder.len() != total {
            return Err(PipelineError::Invariant(format!("remainder of block {i} is not divisible")));
        }
        out.classes.extend(color_block(cover, &remainder, &remainder_sizes)?);

        let mut shift: Vec<usize> = q.iter().chain(&p_next).copied().collect();
        shift.sort_unstable();
        let shift_graph = cover.induced_undirected(&shift);
        let shift_max_degree = shift_graph.max_degree();
        if shift_max_degree + 1 >= 4 * cfg.p {
            return Err(PipelineError::Invariant(format!(
                "shift set of block {i} has maximum degree {shift_max_degree} >= 4p - 1"
            )));
        }
        let shift_sizes = plan.take(shift_classes);
        out.classes.extend(color_block(cover, &shift, &shift_sizes)?);
        let shift_len = shift.len();

        out.records.push(ShiftRecord {
            block: i,
            rho,
            next_class_size,
            q_len: q.len(),
            p_next_len: p_next.len(),
            shift_len,
            shift_target,
            shift_set: shift,
            shift_max_degree,
            remainder_len: remainder.len(),
        });
        carried = p_next;
        carried.sort_unstable();
    }
    finish(out, plan)
}

fn finish(out: Phase3Result, plan: &SizePlan) -> Result<Phase3Result, PipelineError> {
    if plan.remaining() != 0 {
        return Err(PipelineError::Invariant(format!("{} planned classes were never filled", plan.remaining())));
    }
    Ok(out)
}
