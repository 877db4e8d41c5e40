//! Seeded instance generators.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{ThreeGraph, Triad};
use crate::pipeline::PipelineConfig;

struct Builder {
    n: usize,
    cap: usize,
    degree: Vec<usize>,
    triads: HashSet<Triad>,
    codegree: HashMap<(usize, usize), usize>,
}

impl Builder {
    fn new(n: usize, cap: usize) -> Self {
        Self { n, cap, degree: vec![0; n], triads: HashSet::new(), codegree: HashMap::new() }
    }

    fn codegree(&self, u: usize, v: usize) -> usize {
        self.codegree.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Adds `{u,v,w}` if it is new, nondegenerate and keeps every degree
    /// within the cap.
    fn try_add(&mut self, u: usize, v: usize, w: usize) -> bool {
        let mut t = [u, v, w];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] || t.iter().any(|&x| self.degree[x] >= self.cap) {
            return false;
        }
        if !self.triads.insert(t) {
            return false;
        }
        for x in t {
            self.degree[x] += 1;
        }
        for (x, y) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *self.codegree.entry((x, y)).or_insert(0) += 1;
        }
        true
    }

    fn finish(self) -> ThreeGraph {
        let mut triads: Vec<Triad> = self.triads.into_iter().collect();
        triads.sort_unstable();
        ThreeGraph::new(self.n, triads).expect("builder keeps triads valid")
    }
}

/// Random 3-graph with maximum degree at most `d` and up to `target_m`
/// triads, drawn uniformly and rejected when they repeat or would push a
/// vertex past `d`. Sampling stops early after a long run of rejections, so
/// fewer triads than requested may come back.
pub fn gen_bounded_degree(n: usize, d: usize, target_m: usize, seed: u64) -> ThreeGraph {
    assert!(n >= 3, "need at least three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(n, d);
    let patience = 200 + 20 * target_m;
    let mut misses = 0;
    while b.triads.len() < target_m && misses < patience {
        let (u, v, w) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if b.try_add(u, v, w) {
            misses = 0;
        } else {
            misses += 1;
        }
    }
    b.finish()
}

/// All `C(n,3)` triads on `n` vertices.
pub fn gen_complete(n: usize) -> ThreeGraph {
    assert!(n >= 3, "need at least three vertices");
    let triads = (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])));
    ThreeGraph::new(n, triads).expect("complete triads are valid")
}

/// One strong bundle per this many vertices.
pub const FRIENDLY_VERTICES_PER_BUNDLE: usize = 12;
/// Average number of weak triads per vertex.
pub const FRIENDLY_WEAK_DEGREE: usize = 3;

/// Sparse instance with maximum degree exactly `cfg.d` mixing strong pairs
/// (codegree `cfg.a`) and weak triads (every pair in a single triad).
///
/// Vertex 0 is a hub carrying `floor(d / a)` strong bundles and weak triads
/// up to degree `d`. The rest holds one strong bundle per
/// [`FRIENDLY_VERTICES_PER_BUNDLE`] vertices and on average
/// [`FRIENDLY_WEAK_DEGREE`] weak triads per vertex.
pub fn gen_pipeline_friendly(cfg: &PipelineConfig, seed: u64) -> ThreeGraph {
    let (n, d, a) = (cfg.n, cfg.d, cfg.a.max(2));
    assert!(n >= 2 * a + 4 && d >= a, "instance too small for a strong bundle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(n, d);

    let bundle = |b: &mut Builder, rng: &mut ChaCha8Rng, u: usize, v: usize| {
        let mut added = 0;
        let mut misses = 0;
        while added < a && misses < 1000 {
            let w = rng.gen_range(0..n);
            if w != u && w != v && b.codegree(u, w) == 0 && b.codegree(v, w) == 0 && b.try_add(u, v, w) {
                added += 1;
            } else {
                misses += 1;
            }
        }
    };

    for _ in 0..d / a {
        let v = rng.gen_range(1..n);
        if b.codegree(0, v) == 0 && b.degree[v] + a <= d {
            bundle(&mut b, &mut rng, 0, v);
        }
    }
    for _ in 0..n / FRIENDLY_VERTICES_PER_BUNDLE {
        let (u, v) = (rng.gen_range(1..n), rng.gen_range(1..n));
        if u != v && b.codegree(u, v) == 0 && b.degree[u] + a <= d / 2 && b.degree[v] + a <= d / 2 {
            bundle(&mut b, &mut rng, u, v);
        }
    }

    // Weak triads keep every pair at codegree one and stay well below d.
    let weak_cap = (d / 4).max(2);
    let fresh = |b: &Builder, t: [usize; 3]| {
        b.codegree(t[0], t[1]) == 0 && b.codegree(t[0], t[2]) == 0 && b.codegree(t[1], t[2]) == 0
    };
    let weak_target = b.triads.len() + n * FRIENDLY_WEAK_DEGREE / 3;
    let mut misses = 0;
    while b.triads.len() < weak_target && misses < 20 * n {
        let t = [rng.gen_range(1..n), rng.gen_range(1..n), rng.gen_range(1..n)];
        if t.iter().all(|&x| b.degree[x] < weak_cap) && fresh(&b, t) && b.try_add(t[0], t[1], t[2]) {
            misses = 0;
        } else {
            misses += 1;
        }
    }

    let mut misses = 0;
    while b.degree[0] < d && misses < 100 * n {
        let t = [0, rng.gen_range(1..n), rng.gen_range(1..n)];
        if b.degree[t[1]] < weak_cap && b.degree[t[2]] < weak_cap && fresh(&b, t) && b.try_add(t[0], t[1], t[2]) {
            misses = 0;
        } else {
            misses += 1;
        }
    }
    b.finish()
}
