//! Equitable `r`-coloring of graphs with maximum degree below `r`.
//!
//! The graph is padded with a small clique so that `r` divides the vertex
//! count, every vertex starts isolated in a round-robin equitable coloring,
//! and edges are switched on one vertex at a time. When an inserted vertex
//! clashes with a neighbor it is moved to a class where it has no neighbor,
//! which leaves one class short (`V-`) and one class long (`V+`). Balance is
//! then restored by moving single vertices along paths of the class
//! accessibility digraph (`X -> Y` when some vertex of `X` has no neighbor in
//! `Y`). When `V+` cannot reach `V-`, a vertex `z` of an accessible class is
//! moved inside the accessible part and one of its solo neighbors `y` (a
//! vertex whose only neighbor in `z`'s class is `z`) takes its place; the
//! accessible classes are then frozen and the same procedure continues on the
//! remaining classes, where every vertex has fewer neighbors than classes.
//!
//! If neither step applies, a seeded swap-based local search finishes the
//! job on the full graph. Every result is checked before it is returned.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{verify_graph_coloring, Coloring, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquitableError {
    #[error("maximum degree {max_degree} needs more than {colors} colors")]
    DegreeTooLarge { max_degree: usize, colors: usize },
    #[error("cannot color {n} vertices with zero colors")]
    NoColors { n: usize },
    #[error("local search did not converge on a graph with {n} vertices and {colors} colors")]
    Unresolved { n: usize, colors: usize },
}

/// Counters describing how a coloring was reached.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquitableTrace {
    /// Vertices whose insertion created a clash.
    pub clashes: usize,
    /// Single-vertex moves along accessibility paths.
    pub path_moves: usize,
    /// Solo-neighbor exchanges that shrank the active class set.
    pub solo_exchanges: usize,
    /// Whether the local-search finisher ran.
    pub local_search: bool,
}

/// Equitable `r`-coloring of `g`; requires `r > Δ(g)`.
pub fn equitable_color(g: &SimpleGraph, r: usize) -> Result<Coloring, EquitableError> {
    equitable_color_traced(g, r).map(|(c, _)| c)
}

pub fn equitable_color_traced(
    g: &SimpleGraph,
    r: usize,
) -> Result<(Coloring, EquitableTrace), EquitableError> {
    let n = g.n();
    if r == 0 {
        if n == 0 {
            return Ok((Coloring::new(0, Vec::new()).unwrap(), EquitableTrace::default()));
        }
        return Err(EquitableError::NoColors { n });
    }
    let max_degree = g.max_degree();
    if max_degree >= r {
        return Err(EquitableError::DegreeTooLarge { max_degree, colors: r });
    }

    let adj = padded_adjacency(g, r);
    let mut state = State::new(&adj, r);
    let mut trace = EquitableTrace::default();

    let mut stuck = false;
    for u in 0..adj.len() {
        for &v in adj[u].iter().filter(|&&v| v < u) {
            state.add_edge(u, v);
        }
        let from = state.color[u];
        if state.count(u, from) == 0 {
            continue;
        }
        trace.clashes += 1;
        let to = (0..r)
            .filter(|&c| state.count(u, c) == 0)
            .min_by_key(|&c| (state.members[c].len(), c))
            .expect("fewer neighbors than colors");
        state.change_color(u, to);
        if !state.rebalance(from, to, &mut trace) {
            stuck = true;
            for w in u + 1..adj.len() {
                for &v in adj[w].iter().filter(|&&v| v < w) {
                    state.add_edge(w, v);
                }
            }
            break;
        }
    }

    if stuck {
        trace.local_search = true;
        if !state.local_search(0x5eed_u64 ^ n as u64) {
            return Err(EquitableError::Unresolved { n, colors: r });
        }
    }

    let coloring = Coloring::new(r, state.color[..n].to_vec()).expect("colors below r");
    let verdict = verify_graph_coloring(g, &coloring).expect("shape matches");
    assert!(verdict.passed(), "equitable coloring failed its own check: {:?}", verdict.witness());
    Ok((coloring, trace))
}

/// Adjacency with `r - n mod r` extra clique vertices appended so that the
/// vertex count is a multiple of `r`. The clique forces the padding into
/// distinct classes, so dropping it leaves sizes `floor` and `ceil` of `n/r`.
fn padded_adjacency(g: &SimpleGraph, r: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let pad = (r - n % r) % r;
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    for i in 0..pad {
        adj.push((0..pad).filter(|&j| j != i).map(|j| n + j).collect());
    }
    adj
}

struct Accessible {
    reached: Vec<bool>,
    /// Next class on a path toward `V-`.
    parent: Vec<usize>,
    /// BFS order starting with `V-`.
    order: Vec<usize>,
}

struct State<'a> {
    k: usize,
    adj: &'a [Vec<usize>],
    active: Vec<Vec<usize>>,
    color: Vec<usize>,
    members: Vec<Vec<usize>>,
    pos: Vec<usize>,
    /// `cnt[v * k + c]`: active neighbors of `v` in class `c`.
    cnt: Vec<u32>,
    /// `movable[x * k + y]`: vertices of `x` with no active neighbor in `y`.
    movable: Vec<u32>,
}

impl<'a> State<'a> {
    fn new(adj: &'a [Vec<usize>], k: usize) -> Self {
        let total = adj.len();
        let color: Vec<usize> = (0..total).map(|v| v % k).collect();
        let mut members = vec![Vec::with_capacity(total / k + 1); k];
        let mut pos = vec![0; total];
        for (v, &c) in color.iter().enumerate() {
            pos[v] = members[c].len();
            members[c].push(v);
        }
        let s = (total / k) as u32;
        Self {
            k,
            adj,
            active: vec![Vec::new(); total],
            color,
            members,
            pos,
            cnt: vec![0; total * k],
            movable: vec![s; k * k],
        }
    }

    fn count(&self, v: usize, c: usize) -> u32 {
        self.cnt[v * self.k + c]
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.active[u].push(v);
        self.active[v].push(u);
        for (a, b) in [(u, v), (v, u)] {
            let cb = self.color[b];
            let slot = a * self.k + cb;
            self.cnt[slot] += 1;
            if self.cnt[slot] == 1 {
                self.movable[self.color[a] * self.k + cb] -= 1;
            }
        }
    }

    fn change_color(&mut self, u: usize, to: usize) {
        let k = self.k;
        let from = self.color[u];
        debug_assert_ne!(from, to);
        for c in 0..k {
            if self.cnt[u * k + c] == 0 {
                self.movable[from * k + c] -= 1;
                self.movable[to * k + c] += 1;
            }
        }
        for i in 0..self.active[u].len() {
            let w = self.active[u][i];
            let cw = self.color[w];
            self.cnt[w * k + from] -= 1;
            if self.cnt[w * k + from] == 0 {
                self.movable[cw * k + from] += 1;
            }
            self.cnt[w * k + to] += 1;
            if self.cnt[w * k + to] == 1 {
                self.movable[cw * k + to] -= 1;
            }
        }
        let p = self.pos[u];
        self.members[from].swap_remove(p);
        if let Some(&moved) = self.members[from].get(p) {
            self.pos[moved] = p;
        }
        self.pos[u] = self.members[to].len();
        self.members[to].push(u);
        self.color[u] = to;
    }

    /// Lowest-numbered vertex of `from` with no active neighbor in `to`.
    fn witness(&self, from: usize, to: usize) -> Option<usize> {
        self.members[from].iter().copied().filter(|&v| self.count(v, to) == 0).min()
    }

    fn accessible(&self, target: usize, excluded: &[bool], banned: Option<usize>) -> Accessible {
        let k = self.k;
        let mut reached = vec![false; k];
        let mut parent = vec![usize::MAX; k];
        let mut order = vec![target];
        reached[target] = true;
        let mut head = 0;
        while head < order.len() {
            let y = order[head];
            head += 1;
            for x in 0..k {
                if !reached[x] && !excluded[x] && Some(x) != banned && self.movable[x * k + y] > 0 {
                    reached[x] = true;
                    parent[x] = y;
                    order.push(x);
                }
            }
        }
        Accessible { reached, parent, order }
    }

    fn shift_path(&mut self, src: usize, dst: usize, parent: &[usize], trace: &mut EquitableTrace) {
        let mut x = src;
        while x != dst {
            let y = parent[x];
            let w = self.witness(x, y).expect("accessibility edge has a witness");
            self.change_color(w, y);
            trace.path_moves += 1;
            x = y;
        }
    }

    /// Restores equal class sizes after one vertex moved from `vminus` to
    /// `vplus`. Returns `false` when neither move type applies.
    fn rebalance(&mut self, mut vminus: usize, vplus: usize, trace: &mut EquitableTrace) -> bool {
        let mut excluded = vec![false; self.k];
        loop {
            let acc = self.accessible(vminus, &excluded, None);
            if acc.reached[vplus] {
                self.shift_path(vplus, vminus, &acc.parent, trace);
                return true;
            }
            let Some(ex) = self.find_solo_exchange(vminus, &excluded, &acc) else {
                return false;
            };
            trace.solo_exchanges += 1;
            self.change_color(ex.z, ex.target);
            self.shift_path(ex.target, vminus, &ex.parent, trace);
            let y_class = self.color[ex.y];
            debug_assert_eq!(self.count(ex.y, ex.home), 0);
            self.change_color(ex.y, ex.home);
            for &c in &acc.order {
                excluded[c] = true;
            }
            if y_class == vplus {
                return true;
            }
            vminus = y_class;
        }
    }

    fn find_solo_exchange(&self, vminus: usize, excluded: &[bool], acc: &Accessible) -> Option<SoloExchange> {
        for &home in acc.order.iter().rev().filter(|&&c| c != vminus) {
            let avoiding = self.accessible(vminus, excluded, Some(home));
            let mut zs = self.members[home].clone();
            zs.sort_unstable();
            for z in zs {
                let target = avoiding.order.iter().copied().find(|&c| self.count(z, c) == 0);
                let Some(target) = target else { continue };
                let y = self.active[z]
                    .iter()
                    .copied()
                    .filter(|&y| {
                        let cy = self.color[y];
                        !acc.reached[cy] && !excluded[cy] && self.count(y, home) == 1
                    })
                    .min();
                if let Some(y) = y {
                    return Some(SoloExchange { home, z, target, y, parent: avoiding.parent });
                }
            }
        }
        None
    }

    /// Swap-based search for a proper coloring with all classes of equal
    /// size, started from the current coloring on the full graph.
    fn local_search(&mut self, seed: u64) -> bool {
        let k = self.k;
        let total = self.adj.len();
        let s = total / k;
        let adj = self.adj;
        let mut color = self.color.clone();
        let mut cnt = vec![0u32; total * k];
        for v in 0..total {
            for &w in &adj[v] {
                cnt[v * k + color[w]] += 1;
            }
        }
        let mut sizes = vec![0usize; k];
        for &c in &color {
            sizes[c] += 1;
        }
        let recolor = |v: usize, to: usize, color: &mut Vec<usize>, cnt: &mut Vec<u32>| {
            let from = color[v];
            for &w in &adj[v] {
                cnt[w * k + from] -= 1;
                cnt[w * k + to] += 1;
            }
            color[v] = to;
        };
        // Equalise sizes first.
        while let Some(big) = (0..k).find(|&c| sizes[c] > s) {
            let small = (0..k).find(|&c| sizes[c] < s).unwrap();
            let v = (0..total)
                .filter(|&v| color[v] == big)
                .min_by_key(|&v| (cnt[v * k + small], v))
                .unwrap();
            recolor(v, small, &mut color, &mut cnt);
            sizes[big] -= 1;
            sizes[small] += 1;
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tabu = vec![0usize; total * k];
        let max_iters = 200_000usize.max(50 * total);
        for iter in 1..=max_iters {
            let conflicted: Vec<usize> =
                (0..total).filter(|&v| cnt[v * k + color[v]] > 0).collect();
            if conflicted.is_empty() {
                self.color = color;
                return true;
            }
            let mut best: Option<(i64, usize, usize)> = None;
            let sample: Vec<usize> =
                conflicted.choose_multiple(&mut rng, 8.min(conflicted.len())).copied().collect();
            for &u in &sample {
                let cu = color[u];
                for v in 0..total {
                    let cv = color[v];
                    if cv == cu || tabu[u * k + cv] > iter || tabu[v * k + cu] > iter {
                        continue;
                    }
                    let joint = adj[u].binary_search(&v).is_ok() as i64;
                    let delta = cnt[u * k + cv] as i64 - joint + cnt[v * k + cu] as i64 - joint
                        - cnt[u * k + cu] as i64
                        - cnt[v * k + cv] as i64;
                    if best.is_none_or(|(d, _, _)| delta < d) {
                        best = Some((delta, u, v));
                    }
                }
            }
            let Some((_, u, v)) = best else { continue };
            let (cu, cv) = (color[u], color[v]);
            recolor(u, cv, &mut color, &mut cnt);
            recolor(v, cu, &mut color, &mut cnt);
            let tenure = 7 + rng.gen_range(0..10);
            tabu[u * k + cu] = iter + tenure;
            tabu[v * k + cv] = iter + tenure;
        }
        false
    }
}

struct SoloExchange {
    /// Class that gives up `z` and receives `y`.
    home: usize,
    z: usize,
    /// Accessible class (avoiding `home`) that receives `z`.
    target: usize,
    y: usize,
    parent: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn petersen() -> SimpleGraph {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        SimpleGraph::new(10, e).unwrap()
    }

    fn sorted_sizes(c: &Coloring) -> Vec<usize> {
        let mut s = c.class_sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    #[test]
    fn five_cycle_three_colors() {
        let g = cycle(5);
        let c = equitable_color(&g, 3).unwrap();
        assert!(verify_graph_coloring(&g, &c).unwrap().passed());
        assert_eq!(sorted_sizes(&c), vec![2, 2, 1]);
    }

    #[test]
    fn clique_gets_singletons() {
        let g = complete(4);
        let c = equitable_color(&g, 4).unwrap();
        assert_eq!(sorted_sizes(&c), vec![1, 1, 1, 1]);
    }

    #[test]
    fn petersen_four_colors() {
        let g = petersen();
        assert_eq!(g.max_degree(), 3);
        let c = equitable_color(&g, 4).unwrap();
        assert!(verify_graph_coloring(&g, &c).unwrap().passed());
        assert_eq!(sorted_sizes(&c), vec![3, 3, 2, 2]);
    }

    #[test]
    fn precondition_violation() {
        assert_eq!(
            equitable_color(&complete(4), 3),
            Err(EquitableError::DegreeTooLarge { max_degree: 3, colors: 3 })
        );
        assert_eq!(equitable_color(&cycle(3), 0), Err(EquitableError::NoColors { n: 3 }));
    }

    #[test]
    fn degenerate_inputs() {
        let c = equitable_color(&SimpleGraph::empty(0), 3).unwrap();
        assert!(c.is_empty());
        let c = equitable_color(&SimpleGraph::empty(2), 5).unwrap();
        assert_eq!(sorted_sizes(&c), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn deterministic() {
        let g = petersen();
        assert_eq!(equitable_color(&g, 5).unwrap(), equitable_color(&g, 5).unwrap());
    }

    #[test]
    fn star_forces_rebalancing() {
        // K_{1,5} with 6 colors: every class is a singleton.
        let g = SimpleGraph::new(6, (1..6).map(|i| (0, i))).unwrap();
        let c = equitable_color(&g, 6).unwrap();
        assert_eq!(sorted_sizes(&c), vec![1; 6]);
        // Two disjoint stars, 4 colors.
        let g = SimpleGraph::new(8, (1..4).map(|i| (0, i)).chain((5..8).map(|i| (4, i)))).unwrap();
        let c = equitable_color(&g, 4).unwrap();
        assert!(verify_graph_coloring(&g, &c).unwrap().passed());
    }

    #[test]
    fn local_search_finisher_on_its_own() {
        let g = petersen();
        let adj = padded_adjacency(&g, 4);
        let mut state = State::new(&adj, 4);
        for u in 0..adj.len() {
            for &v in adj[u].iter().filter(|&&v| v < u) {
                state.add_edge(u, v);
            }
        }
        assert!(state.local_search(1));
        let c = Coloring::new(4, state.color[..10].to_vec()).unwrap();
        assert!(verify_graph_coloring(&g, &c).unwrap().passed());
    }
}
