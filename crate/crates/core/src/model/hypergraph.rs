use std::collections::{BTreeSet, HashMap};

use super::{ModelError, SimpleGraph};

/// A triad stored in ascending vertex order.
pub type Triad = [usize; 3];

/// A 3-uniform hypergraph on vertices `0..n`.
///
/// Triads are kept canonical (ascending vertices) and the triad list is kept
/// sorted, so every derived iteration order is independent of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeGraph {
    n: usize,
    triads: Vec<Triad>,
    /// Indices into `triads` for every vertex.
    incidence: Vec<Vec<usize>>,
}

impl ThreeGraph {
    pub fn new<I>(n: usize, triads: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut seen = BTreeSet::new();
        for raw in triads {
            let triad = canonical_triad(raw, n)?;
            if !seen.insert(triad) {
                return Err(ModelError::DuplicateTriad { triad });
            }
        }
        let triads: Vec<Triad> = seen.into_iter().collect();
        let mut incidence = vec![Vec::new(); n];
        for (idx, t) in triads.iter().enumerate() {
            for &v in t {
                incidence[v].push(idx);
            }
        }
        Ok(Self { n, triads, incidence })
    }

    /// Like [`ThreeGraph::new`] but also enforces a declared maximum degree.
    pub fn with_max_degree<I>(n: usize, triads: I, bound: usize) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let h = Self::new(n, triads)?;
        for v in 0..n {
            let degree = h.degree(v);
            if degree > bound {
                return Err(ModelError::DegreeExceeded { vertex: v, degree, bound });
            }
        }
        Ok(h)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, triads: Vec::new(), incidence: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_triads(&self) -> usize {
        self.triads.len()
    }

    pub fn triads(&self) -> &[Triad] {
        &self.triads
    }

    /// Indices of the triads containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Largest number of triads through a single vertex; 0 when edgeless.
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn contains(&self, triad: [usize; 3]) -> bool {
        let mut t = triad;
        t.sort_unstable();
        self.triads.binary_search(&t).is_ok()
    }

    /// Codegree of every pair that lies in at least one triad.
    pub fn codegrees(&self) -> HashMap<(usize, usize), usize> {
        let mut co = HashMap::with_capacity(self.triads.len() * 3);
        for t in &self.triads {
            for pair in triad_pairs(t) {
                *co.entry(pair).or_insert(0) += 1;
            }
        }
        co
    }

    /// The link graph `L_v`: pairs `xy` with `vxy` a triad.
    pub fn link_graph(&self, v: usize) -> SimpleGraph {
        let edges = self.incidence[v].iter().map(|&idx| {
            let t = self.triads[idx];
            let mut others = t.iter().copied().filter(|&x| x != v);
            (others.next().unwrap(), others.next().unwrap())
        });
        SimpleGraph::new(self.n, edges).expect("link graph of a valid 3-graph is simple")
    }

    /// Splits the union of link graphs into strong pairs (codegree `>= a`) and
    /// weak pairs, and flags every triad containing a strong pair as strong.
    pub fn classify_edges(&self, a: usize) -> EdgeClassification {
        assert!(a >= 1, "strength threshold must be positive");
        let co = self.codegrees();
        let mut strong = Vec::new();
        let mut weak = Vec::new();
        for (&pair, &c) in &co {
            if c >= a {
                strong.push(pair);
            } else {
                weak.push(pair);
            }
        }
        strong.sort_unstable();
        weak.sort_unstable();
        let triad_is_strong = self
            .triads
            .iter()
            .map(|t| triad_pairs(t).iter().any(|p| co[p] >= a))
            .collect();
        EdgeClassification { threshold: a, strong, weak, triad_is_strong }
    }

    /// A cover graph with maximum degree at most `max_degree()`.
    ///
    /// Triads are scanned in canonical order. A triad that already contains a
    /// cover edge is skipped; otherwise the pair with the lowest combined
    /// current degree is added, ties broken lexicographically.
    pub fn select_cover(&self) -> SimpleGraph {
        let mut degree = vec![0usize; self.n];
        let mut present: BTreeSet<(usize, usize)> = BTreeSet::new();
        for t in &self.triads {
            let pairs = triad_pairs(t);
            if pairs.iter().any(|p| present.contains(p)) {
                continue;
            }
            let &(u, v) = pairs
                .iter()
                .min_by_key(|&&(u, v)| (degree[u] + degree[v], u, v))
                .unwrap();
            degree[u] += 1;
            degree[v] += 1;
            present.insert((u, v));
        }
        SimpleGraph::new(self.n, present).expect("cover edges are distinct and in range")
    }

    /// Sub-hypergraph induced by `vertices`, relabelled by position.
    pub fn induced(&self, vertices: &[usize]) -> ThreeGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut triads = BTreeSet::new();
        for &v in vertices {
            for &idx in &self.incidence[v] {
                let t = self.triads[idx];
                if t.iter().all(|&x| index[x] != usize::MAX) {
                    let mut m = [index[t[0]], index[t[1]], index[t[2]]];
                    m.sort_unstable();
                    triads.insert(m);
                }
            }
        }
        let triads: Vec<Triad> = triads.into_iter().collect();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (idx, t) in triads.iter().enumerate() {
            for &v in t {
                incidence[v].push(idx);
            }
        }
        ThreeGraph { n: vertices.len(), triads, incidence }
    }
}

/// Output of [`ThreeGraph::classify_edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    pub threshold: usize,
    /// Pairs with codegree at least the threshold, sorted.
    pub strong: Vec<(usize, usize)>,
    /// Remaining pairs of the link union, sorted.
    pub weak: Vec<(usize, usize)>,
    /// Indexed like [`ThreeGraph::triads`].
    pub triad_is_strong: Vec<bool>,
}

impl EdgeClassification {
    pub fn is_strong_pair(&self, u: usize, v: usize) -> bool {
        let p = if u < v { (u, v) } else { (v, u) };
        self.strong.binary_search(&p).is_ok()
    }

    pub fn num_weak_triads(&self) -> usize {
        self.triad_is_strong.iter().filter(|s| !**s).count()
    }
}

pub(crate) fn triad_pairs(t: &Triad) -> [(usize, usize); 3] {
    [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
}

fn canonical_triad(raw: [usize; 3], n: usize) -> Result<Triad, ModelError> {
    let mut t = raw;
    t.sort_unstable();
    if let Some(&vertex) = t.iter().find(|&&v| v >= n) {
        return Err(ModelError::VertexOutOfRange { vertex, n });
    }
    if t[0] == t[1] || t[1] == t[2] {
        return Err(ModelError::DegenerateTriad { triad: raw });
    }
    Ok(t)
}
