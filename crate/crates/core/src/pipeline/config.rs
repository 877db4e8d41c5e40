use crate::model::ThreeGraph;

/// Scale used by the desk-sized presets. At this value every budget sits on
/// its feasibility floor (see [`PipelineConfig::new`]).
pub const DESK_SCALE: f64 = 1e-6;

/// Smallest maximum degree for which the automatic route tries the pipeline
/// at full scale.
pub const FULL_SCALE_DEGREE_GATE: usize = 10_000_000;

/// Which coloring path [`super::color_equitably`] may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Pipeline when `d >= d_gate` and `r <= d`, otherwise the cover fallback.
    #[default]
    Auto,
    ForceFallback,
    ForcePipeline,
}

/// Every constant the pipeline reads.
///
/// `p`, the weak-triad budget and the strong-edge budget are the full-scale
/// values multiplied by `scale`, then raised to the smallest values that keep
/// the partition step satisfiable and the degree arithmetic valid:
///
/// * strong budget `>= floor(2d / (a t)) + 2` (a vertex has at most `2d/a`
///   strong edges, spread over `t` parts);
/// * weak budget `>= 2`;
/// * `p >= ceil(strong) + 2 ceil(weak)`, so an out-degree made of fewer than
///   `strong` strong edges and two diedges for each of fewer than `weak` weak
///   triads stays below `p - 1`.
///
/// At `scale = 1` the floors are inactive for every `d >= 2` and the
/// constants are `p = ceil(1e5 ln^2 d)`, `1e4 ln^2 d` and `10 ln d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub n: usize,
    pub r: usize,
    pub d: usize,
    /// Size of the larger classes.
    pub s: usize,
    /// Number of classes of size `s`; the other `r - b` have size `s - 1`.
    /// Zero when `r` divides `n`.
    pub b: usize,
    /// Number of parts in the first partition, `ceil(sqrt d)`.
    pub t: usize,
    /// Codegree threshold for strong pairs; equals `t`.
    pub a: usize,
    /// Intra-part degree budget.
    pub p: usize,
    pub weak_triad_budget: f64,
    pub strong_edge_budget: f64,
    pub scale: f64,
    pub seed: u64,
    /// Resample cap per engine call; `None` uses [`crate::lll::default_cap`].
    pub resample_cap: Option<u64>,
    /// Fresh-seed retries inside a phase after its resample cap is hit.
    pub phase_retries: usize,
    /// Fresh-seed retries of the whole pipeline.
    pub max_retries: usize,
    pub d_gate: usize,
    pub route: Route,
}

impl PipelineConfig {
    pub fn new(n: usize, r: usize, d: usize, scale: f64) -> Self {
        assert!(scale > 0.0 && scale <= 1.0, "scale must lie in (0, 1]");
        let (s, b) = plan_sizes(n, r.max(1));
        let t = ceil_sqrt(d).max(1);
        let a = t;
        let ln = (d.max(2) as f64).ln();
        let strong_floor = (2 * d / (a * t)) as f64 + 2.0;
        let strong_edge_budget = (scale * 10.0 * ln).max(strong_floor);
        let weak_triad_budget = (scale * 1e4 * ln * ln).max(2.0);
        let p_floor = strong_edge_budget.ceil() as usize + 2 * weak_triad_budget.ceil() as usize;
        let p = ((scale * 1e5 * ln * ln).ceil() as usize).max(p_floor);
        Self {
            n,
            r,
            d,
            s,
            b,
            t,
            a,
            p,
            weak_triad_budget,
            strong_edge_budget,
            scale,
            seed: 0,
            resample_cap: None,
            phase_retries: 3,
            max_retries: 5,
            d_gate: FULL_SCALE_DEGREE_GATE,
            route: Route::Auto,
        }
    }

    /// Configuration for coloring `h` with `r` colors at the given scale.
    pub fn for_instance(h: &ThreeGraph, r: usize, scale: f64) -> Self {
        Self::new(h.n(), r, h.max_degree(), scale)
    }

    /// Desk-scale configuration: [`DESK_SCALE`] and a degree gate of 2.
    pub fn desk(n: usize, r: usize, d: usize) -> Self {
        Self { d_gate: 2, ..Self::new(n, r, d, DESK_SCALE) }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    pub fn with_max_retries(mut self, retries: usize) -> Self {
        self.max_retries = retries;
        self
    }

    /// `p s`, the block unit used by the absorb and balance phases.
    pub fn ps(&self) -> usize {
        self.p * self.s
    }

    /// Full-scale bound `1e7 sqrt(d) ln^2 d` on the number of colors.
    pub fn full_scale_color_bound(d: usize) -> f64 {
        let ln = (d as f64).ln();
        1e7 * (d as f64).sqrt() * ln * ln
    }

    /// Whether `r` exceeds [`Self::full_scale_color_bound`].
    pub fn meets_full_scale_bound(&self) -> bool {
        self.r as f64 > Self::full_scale_color_bound(self.d)
    }
}

/// `(s, b)` such that the classes are `b` of size `s` and `r - b` of size
/// `s - 1` when `r` does not divide `n`, or `r` of size `s = n / r`.
pub fn plan_sizes(n: usize, r: usize) -> (usize, usize) {
    assert!(r >= 1, "at least one color");
    let (q, b) = (n / r, n % r);
    if b == 0 {
        (q, 0)
    } else {
        (q + 1, b)
    }
}

fn ceil_sqrt(d: usize) -> usize {
    let mut t = (d as f64).sqrt() as usize;
    while t * t < d {
        t += 1;
    }
    while t > 0 && (t - 1) * (t - 1) >= d {
        t -= 1;
    }
    t
}

/// Planned class sizes consumed in order: `b` copies of `s`, then `s - 1`.
#[derive(Debug, Clone)]
pub struct SizePlan {
    sizes: Vec<usize>,
    cursor: usize,
}

impl SizePlan {
    pub fn new(cfg: &PipelineConfig) -> Self {
        let sizes = if cfg.b == 0 {
            vec![cfg.s; cfg.r]
        } else {
            let mut v = vec![cfg.s; cfg.b];
            v.resize(cfg.r, cfg.s - 1);
            v
        };
        Self { sizes, cursor: 0 }
    }

    pub fn next_size(&self) -> Option<usize> {
        self.sizes.get(self.cursor).copied()
    }

    pub fn remaining(&self) -> usize {
        self.sizes.len() - self.cursor
    }

    /// Consumes the next `k` sizes.
    pub fn take(&mut self, k: usize) -> Vec<usize> {
        let end = (self.cursor + k).min(self.sizes.len());
        let out = self.sizes[self.cursor..end].to_vec();
        self.cursor = end;
        out
    }

    /// Number of upcoming classes whose sizes sum to the largest total not
    /// exceeding `budget`, together with that total.
    pub fn fit(&self, budget: usize) -> (usize, usize) {
        let mut total = 0;
        let mut count = 0;
        for &sz in &self.sizes[self.cursor..] {
            if total + sz > budget {
                break;
            }
            total += sz;
            count += 1;
        }
        (count, total)
    }

    /// Sum of the next `k` sizes.
    pub fn sum_next(&self, k: usize) -> usize {
        self.sizes[self.cursor..].iter().take(k).sum()
    }
}
