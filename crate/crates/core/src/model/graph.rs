use super::ModelError;

/// Undirected simple graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    num_edges: usize,
}

impl SimpleGraph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated
    /// edges (in either orientation).
    pub fn new<I>(n: usize, edges: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut num_edges = 0;
        for (u, v) in edges {
            if u == v {
                return Err(ModelError::Loop { vertex: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(ModelError::VertexOutOfRange { vertex: w, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
            num_edges += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = if u < w[0] { (u, w[0]) } else { (w[0], u) };
                return Err(ModelError::DuplicateEdge { u: a, v: b });
            }
        }
        Ok(Self { n, adj, num_edges })
    }

    /// Builds a graph from adjacency lists that may contain both orientations
    /// and repeats; the result is symmetrised and deduplicated.
    pub(crate) fn from_neighbor_lists(mut adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let mut extra: Vec<(usize, usize)> = Vec::new();
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                extra.push((v, u));
            }
        }
        for (v, u) in extra {
            adj[v].push(u);
        }
        let mut num_edges = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.retain(|&v| v != u);
            list.sort_unstable();
            list.dedup();
            num_edges += list.len();
        }
        Self { n, adj, num_edges: num_edges / 2 }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, adj: vec![Vec::new(); n], num_edges: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut num_edges = 0;
        let adj: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                num_edges += list.len();
                list
            })
            .collect();
        SimpleGraph { n: vertices.len(), adj, num_edges: num_edges / 2 }
    }
}
