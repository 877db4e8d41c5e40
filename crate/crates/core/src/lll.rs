//! Moser–Tardos resampling over independent finite-domain variables.
//!
//! Every variable is drawn uniformly from an explicit candidate list. A bad
//! event names the variables it reads (its scope) and a predicate over their
//! values. The engine samples everything once, then repeatedly picks the
//! lowest-indexed violated event and redraws the variables in its scope until
//! no event is violated or the resample cap is hit.
//!
//! Only events whose scope meets a freshly redrawn scope are re-examined, so
//! the cost of a resample is proportional to the dependency degree rather
//! than the number of events.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Independent variables, each uniform over a nonempty candidate list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSpace {
    domains: Vec<Vec<usize>>,
}

impl VariableSpace {
    pub fn new(domains: Vec<Vec<usize>>) -> Result<Self, LllError> {
        if let Some(var) = domains.iter().position(Vec::is_empty) {
            return Err(LllError::EmptyDomain { var });
        }
        Ok(Self { domains })
    }

    /// `count` variables, each uniform over `0..k`.
    pub fn uniform(count: usize, k: usize) -> Result<Self, LllError> {
        Self::new(vec![(0..k).collect(); count])
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn domain(&self, var: usize) -> &[usize] {
        &self.domains[var]
    }

    fn draw(&self, var: usize, rng: &mut impl Rng) -> usize {
        let d = &self.domains[var];
        d[rng.gen_range(0..d.len())]
    }
}

type Predicate = Box<dyn Fn(&[usize]) -> bool + Send + Sync>;

/// An event over a fixed set of variables.
///
/// The predicate receives the values of the scope variables in scope order
/// and returns `true` when the event is violated.
pub struct BadEvent {
    tag: String,
    scope: Vec<usize>,
    predicate: Predicate,
}

impl BadEvent {
    pub fn new<F>(tag: impl Into<String>, scope: Vec<usize>, predicate: F) -> Self
    where
        F: Fn(&[usize]) -> bool + Send + Sync + 'static,
    {
        Self { tag: tag.into(), scope, predicate: Box::new(predicate) }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    /// Evaluates the event on a full assignment, using `buf` as scratch.
    pub fn is_violated_with(&self, assignment: &[usize], buf: &mut Vec<usize>) -> bool {
        buf.clear();
        buf.extend(self.scope.iter().map(|&v| assignment[v]));
        (self.predicate)(buf)
    }

    pub fn is_violated(&self, assignment: &[usize]) -> bool {
        self.is_violated_with(assignment, &mut Vec::with_capacity(self.scope.len()))
    }
}

impl fmt::Debug for BadEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BadEvent").field("tag", &self.tag).field("scope", &self.scope).finish()
    }
}

/// Work done by one call of [`resample_until_clear`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResampleLog {
    pub seed: u64,
    pub total_resamples: u64,
    /// Indexed like the event list.
    pub per_event: Vec<u64>,
    /// Number of event evaluations performed.
    pub iterations: u64,
}

/// The cap was reached before every event cleared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapExceeded {
    pub log: ResampleLog,
    pub assignment: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LllError {
    #[error("variable {var} has an empty domain")]
    EmptyDomain { var: usize },
    #[error("event {event} has an invalid scope entry {var}")]
    InvalidScope { event: usize, var: usize },
    #[error("resample cap must be at least 1")]
    ZeroCap,
    #[error("resample cap of {cap} exceeded (seed {})", .state.log.seed)]
    CapExceeded { cap: u64, state: Box<CapExceeded> },
}

/// Default cap `10 * m * max(1, ln m)` for `m` events.
pub fn default_cap(num_events: usize) -> u64 {
    let m = num_events.max(1) as f64;
    (10.0 * m * m.ln().max(1.0)).ceil() as u64
}

/// Derives an independent stream seed from a base seed and a stream index
/// (SplitMix64 finaliser applied to `seed ^ golden * (stream + 1)`).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(stream.wrapping_add(1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples every variable, then resamples violated events (lowest index
/// first) until none is violated. Deterministic for a given seed.
pub fn resample_until_clear(
    space: &VariableSpace,
    events: &[BadEvent],
    seed: u64,
    cap: u64,
) -> Result<(Vec<usize>, ResampleLog), LllError> {
    if cap == 0 {
        return Err(LllError::ZeroCap);
    }
    let nvars = space.len();
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); nvars];
    for (e, ev) in events.iter().enumerate() {
        for (k, &var) in ev.scope.iter().enumerate() {
            if var >= nvars || ev.scope[..k].contains(&var) {
                return Err(LllError::InvalidScope { event: e, var });
            }
            touching[var].push(e);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment: Vec<usize> = (0..nvars).map(|v| space.draw(v, &mut rng)).collect();
    let mut log = ResampleLog { seed, per_event: vec![0; events.len()], ..ResampleLog::default() };

    let mut queued = vec![true; events.len()];
    let mut queue: BinaryHeap<Reverse<usize>> = (0..events.len()).map(Reverse).collect();
    let mut buf = Vec::new();

    while let Some(Reverse(e)) = queue.pop() {
        queued[e] = false;
        log.iterations += 1;
        if !events[e].is_violated_with(&assignment, &mut buf) {
            continue;
        }
        if log.total_resamples >= cap {
            return Err(LllError::CapExceeded { cap, state: Box::new(CapExceeded { log, assignment }) });
        }
        log.total_resamples += 1;
        log.per_event[e] += 1;
        for &var in &events[e].scope {
            assignment[var] = space.draw(var, &mut rng);
            for &f in &touching[var] {
                if !queued[f] {
                    queued[f] = true;
                    queue.push(Reverse(f));
                }
            }
        }
    }

    debug_assert!(events.iter().all(|ev| !ev.is_violated(&assignment)));
    Ok((assignment, log))
}
