//! Absorbing the vertices of small parts into independent classes carved
//! from the large parts.

use crate::lll::{default_cap, derive_seed, resample_until_clear, BadEvent, LllError, ResampleLog, VariableSpace};
use crate::model::ThreeGraph;

use super::config::SizePlan;
use super::phase1::Phase1Result;
use super::{color_block, PipelineConfig, PipelineError};

#[derive(Debug, Clone, Default)]
pub struct Phase2Result {
    /// Parts with at least `12ps` vertices, ascending (`J`).
    pub large_parts: Vec<usize>,
    /// Vertices of the remaining parts (`S`), ascending.
    pub small_vertices: Vec<usize>,
    /// `|Y_i|` and `|Z_i|` per large part.
    pub y_sizes: Vec<usize>,
    pub z_sizes: Vec<usize>,
    /// Size-`s` classes of the `H[Y_i]` colorings (`W_j`), in order.
    pub w_blocks: Vec<Vec<usize>>,
    /// Large-part position of each `W_j`.
    pub w_owner: Vec<usize>,
    /// `|I(v)|` for each small vertex, aligned with `small_vertices`.
    pub index_set_sizes: Vec<usize>,
    /// Block chosen for each small vertex, aligned with `small_vertices`.
    pub chi: Vec<usize>,
    /// `W_j` plus the small vertices assigned to it.
    pub w_plus: Vec<Vec<usize>>,
    /// Leftover `R_j ⊆ W_j` after carving `W_j^+`.
    pub remainders: Vec<Vec<usize>>,
    /// Independent classes emitted so far, in plan order.
    pub finished: Vec<Vec<usize>>,
    /// `U_i`, one per large part, ascending.
    pub u_blocks: Vec<Vec<usize>>,
    pub log: ResampleLog,
}

impl Phase2Result {
    pub fn t0(&self) -> usize {
        self.large_parts.len()
    }

    pub fn t1(&self) -> usize {
        self.w_blocks.len()
    }
}

pub fn phase2_absorb(
    h: &ThreeGraph,
    p1: &Phase1Result,
    cfg: &PipelineConfig,
    plan: &mut SizePlan,
    seed: u64,
) -> Result<Phase2Result, PipelineError> {
    let cover = &p1.cover;
    let s = cfg.s;
    let ps = cfg.ps();
    let parts = p1.parts();
    let large_parts: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].len() >= 12 * ps).collect();
    if large_parts.is_empty() {
        return Err(PipelineError::NotApplicable(format!("no part reaches 12ps = {}", 12 * ps)));
    }
    let is_large: Vec<bool> = (0..parts.len()).map(|i| large_parts.contains(&i)).collect();
    let small_vertices: Vec<usize> = (0..h.n()).filter(|&v| !is_large[cover.label(v)]).collect();

    // Split X_i = Y_i ∪ Z_i with ps | |Y_i| and 12ps <= |Z_i| < 13ps; Z_i
    // takes the highest-numbered vertices.
    let mut out = Phase2Result { large_parts: large_parts.clone(), small_vertices, ..Default::default() };
    let mut z_parts = Vec::new();
    for (pos, &i) in large_parts.iter().enumerate() {
        let x = &parts[i];
        let z_len = 12 * ps + (x.len() - 12 * ps) % ps;
        let (y, z) = x.split_at(x.len() - z_len);
        out.y_sizes.push(y.len());
        out.z_sizes.push(z.len());
        z_parts.push(z.to_vec());
        if !y.is_empty() {
            let sizes = vec![s; y.len() / s];
            for class in color_block(cover, y, &sizes)? {
                out.w_blocks.push(class);
                out.w_owner.push(pos);
            }
        }
    }
    let t1 = out.t1();

    let mut block_of = vec![usize::MAX; h.n()];
    for (j, w) in out.w_blocks.iter().enumerate() {
        for &v in w {
            block_of[v] = j;
        }
    }
    let mut in_z = vec![false; h.n()];
    for &v in z_parts.iter().flatten() {
        in_z[v] = true;
    }

    // I(v): blocks that receive no diedge from v.
    let floor = t1 as i64 - (cfg.p * cfg.t) as i64;
    let mut domains = Vec::with_capacity(out.small_vertices.len());
    for &v in &out.small_vertices {
        let mut blocked = vec![false; t1];
        for w in cover.out_neighbors(v) {
            if block_of[w] != usize::MAX {
                blocked[block_of[w]] = true;
            }
        }
        let domain: Vec<usize> = (0..t1).filter(|&j| !blocked[j]).collect();
        if domain.is_empty() || (domain.len() as i64) < floor {
            return Err(PipelineError::IndexSetTooSmall { vertex: v, size: domain.len(), bound: floor.max(1) as usize });
        }
        out.index_set_sizes.push(domain.len());
        domains.push(domain);
    }

    let mut small_pos = vec![usize::MAX; h.n()];
    for (k, &v) in out.small_vertices.iter().enumerate() {
        small_pos[v] = k;
    }
    let events = absorption_events(h, &small_pos, &block_of, &in_z);
    let space = VariableSpace::new(domains).expect("domains checked nonempty");
    let cap = cfg.resample_cap.unwrap_or_else(|| default_cap(events.len()));
    let mut attempt = 0;
    let (chi, log) = loop {
        let attempt_seed = derive_seed(seed, attempt as u64);
        attempt += 1;
        match resample_until_clear(&space, &events, attempt_seed, cap) {
            Ok(found) => break found,
            Err(LllError::CapExceeded { .. }) if attempt <= cfg.phase_retries => continue,
            Err(e) => return Err(PipelineError::Resample { phase: 2, source: e }),
        }
    };
    out.chi = chi;
    out.log = log;

    // W_j^+ lists the absorbed vertices first so that the remainder, taken
    // from the tail, lies inside W_j.
    let mut absorbed = vec![Vec::new(); t1];
    for (k, &v) in out.small_vertices.iter().enumerate() {
        absorbed[out.chi[k]].push(v);
    }
    let mut u_extra = vec![Vec::new(); large_parts.len()];
    for j in 0..t1 {
        let mut list = absorbed[j].clone();
        list.extend_from_slice(&out.w_blocks[j]);
        let mut start = 0;
        while let Some(size) = plan.next_size() {
            if list.len() - start < size {
                break;
            }
            out.finished.push(list[start..start + size].to_vec());
            plan.take(1);
            start += size;
        }
        let rest = list[start..].to_vec();
        if rest.len() > out.w_blocks[j].len() {
            return Err(PipelineError::Invariant(format!("remainder of W_{j} is not contained in W_{j}")));
        }
        u_extra[out.w_owner[j]].extend_from_slice(&rest);
        out.remainders.push(rest);
        let mut plus = list;
        plus.sort_unstable();
        out.w_plus.push(plus);
    }
    for (pos, z) in z_parts.into_iter().enumerate() {
        let mut u = z;
        u.extend_from_slice(&u_extra[pos]);
        u.sort_unstable();
        if u.len() < 12 * ps {
            return Err(PipelineError::Invariant(format!("U_{pos} has {} < 12ps vertices", u.len())));
        }
        out.u_blocks.push(u);
    }
    check_w_plus_independent(h, &out)?;
    Ok(out)
}

/// `B_e` for every triad that meets `S`, avoids `Z`, and whose other
/// vertices lie in a single `W` block: the triad becomes monochromatic.
fn absorption_events(h: &ThreeGraph, small_pos: &[usize], block_of: &[usize], in_z: &[bool]) -> Vec<BadEvent> {
    let mut events = Vec::new();
    for t in h.triads() {
        if t.iter().any(|&v| in_z[v]) {
            continue;
        }
        let scope: Vec<usize> = t.iter().filter(|&&v| small_pos[v] != usize::MAX).map(|&v| small_pos[v]).collect();
        if scope.is_empty() {
            continue;
        }
        let blocks: Vec<usize> = t.iter().filter(|&&v| small_pos[v] == usize::MAX).map(|&v| block_of[v]).collect();
        if blocks.windows(2).any(|w| w[0] != w[1]) {
            continue;
        }
        let tag = format!("B({},{},{})", t[0], t[1], t[2]);
        match blocks.first().copied() {
            Some(j) => events.push(BadEvent::new(tag, scope, move |vals| vals.iter().all(|&c| c == j))),
            None => events.push(BadEvent::new(tag, scope, |vals| vals.iter().all(|&c| c == vals[0]))),
        }
    }
    events
}

fn check_w_plus_independent(h: &ThreeGraph, out: &Phase2Result) -> Result<(), PipelineError> {
    let mut owner = vec![usize::MAX; h.n()];
    for (j, w) in out.w_plus.iter().enumerate() {
        for &v in w {
            owner[v] = j;
        }
    }
    for t in h.triads() {
        let o = owner[t[0]];
        if o != usize::MAX && owner[t[1]] == o && owner[t[2]] == o {
            return Err(PipelineError::Invariant(format!("W_{o}^+ contains triad {t:?}")));
        }
    }
    Ok(())
}
