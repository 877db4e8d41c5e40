use super::{ModelError, SimpleGraph};

/// Mixed cover digraph: strong edges in both orientations plus weak diedges,
/// together with the vertex partition labels they were built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCover {
    n: usize,
    parts: usize,
    labels: Vec<usize>,
    strong_out: Vec<Vec<usize>>,
    weak_out: Vec<Vec<usize>>,
    /// All in-neighbors (strong and weak), sorted and deduplicated.
    in_adj: Vec<Vec<usize>>,
}

impl MixedCover {
    /// `strong_edges` are undirected and get closed under reversal;
    /// `weak_diedges` are taken as ordered pairs. Labels must lie in
    /// `0..parts`.
    pub fn new<S, W>(
        labels: Vec<usize>,
        parts: usize,
        strong_edges: S,
        weak_diedges: W,
    ) -> Result<Self, ModelError>
    where
        S: IntoIterator<Item = (usize, usize)>,
        W: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        if let Some((vertex, _)) = labels.iter().enumerate().find(|(_, &l)| l >= parts) {
            return Err(ModelError::VertexOutOfRange { vertex, n: parts });
        }
        let check = |u: usize, v: usize| -> Result<(), ModelError> {
            if u == v {
                return Err(ModelError::Loop { vertex: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(ModelError::VertexOutOfRange { vertex: w, n });
                }
            }
            Ok(())
        };
        let mut strong_out = vec![Vec::new(); n];
        for (u, v) in strong_edges {
            check(u, v)?;
            strong_out[u].push(v);
            strong_out[v].push(u);
        }
        let mut weak_out = vec![Vec::new(); n];
        for (u, v) in weak_diedges {
            check(u, v)?;
            weak_out[u].push(v);
        }
        for list in strong_out.iter_mut().chain(weak_out.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        for (u, list) in weak_out.iter().enumerate() {
            if let Some(&v) = list.iter().find(|v| strong_out[u].binary_search(v).is_ok()) {
                return Err(ModelError::OverlappingDiedge { u, v });
            }
        }
        let mut in_adj = vec![Vec::new(); n];
        for u in 0..n {
            for &v in strong_out[u].iter().chain(&weak_out[u]) {
                in_adj[v].push(u);
            }
        }
        for list in &mut in_adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { n, parts, labels, strong_out, weak_out, in_adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of partition classes `t`.
    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn strong_out(&self, v: usize) -> &[usize] {
        &self.strong_out[v]
    }

    pub fn weak_out(&self, v: usize) -> &[usize] {
        &self.weak_out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// Heads of all diedges leaving `v`; strong and weak heads are disjoint.
    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.strong_out[v].iter().chain(&self.weak_out[v]).copied()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.strong_out[v].len() + self.weak_out[v].len()
    }

    pub fn has_diedge(&self, u: usize, v: usize) -> bool {
        self.strong_out[u].binary_search(&v).is_ok() || self.weak_out[u].binary_search(&v).is_ok()
    }

    /// Number of diedges from `v` into partition class `part`.
    pub fn out_degree_into(&self, v: usize, part: usize) -> usize {
        self.out_neighbors(v).filter(|&w| self.labels[w] == part).count()
    }

    pub fn num_strong_diedges(&self) -> usize {
        self.strong_out.iter().map(Vec::len).sum()
    }

    pub fn num_weak_diedges(&self) -> usize {
        self.weak_out.iter().map(Vec::len).sum()
    }

    /// Undirected neighbors: union of out- and in-neighbors, sorted.
    pub fn undirected_neighbors(&self, v: usize) -> Vec<usize> {
        let mut list: Vec<usize> = self.out_neighbors(v).chain(self.in_adj[v].iter().copied()).collect();
        list.sort_unstable();
        list.dedup();
        list
    }

    /// Undirected view of the whole digraph.
    pub fn undirected(&self) -> SimpleGraph {
        SimpleGraph::from_neighbor_lists((0..self.n).map(|v| self.out_neighbors(v).collect()).collect())
    }

    /// Undirected view induced on `vertices`; `vertices[i]` becomes `i`.
    pub fn induced_undirected(&self, vertices: &[usize]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.out_neighbors(v)
                    .filter_map(|w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        SimpleGraph::from_neighbor_lists(adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strong_edges_are_symmetric() {
        let h = MixedCover::new(vec![0, 0, 1], 2, [(0, 1)], [(2, 0)]).unwrap();
        assert!(h.has_diedge(0, 1) && h.has_diedge(1, 0));
        assert!(h.has_diedge(2, 0) && !h.has_diedge(0, 2));
        assert_eq!(h.undirected_neighbors(0), vec![1, 2]);
        assert_eq!(h.out_degree_into(2, 0), 1);
        assert_eq!(h.undirected().num_edges(), 2);
    }

    #[test]
    fn overlap_is_rejected() {
        let err = MixedCover::new(vec![0, 0], 1, [(0, 1)], [(1, 0)]).unwrap_err();
        assert_eq!(err, ModelError::OverlappingDiedge { u: 1, v: 0 });
    }

    #[test]
    fn induced_view_merges_orientations() {
        let h = MixedCover::new(vec![0; 4], 1, [], [(0, 1), (1, 0), (2, 3)]).unwrap();
        let g = h.induced_undirected(&[1, 0, 3]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
