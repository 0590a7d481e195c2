//! Immutable simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

/// Index of a vertex, valid only relative to a specific [`Graph`].
pub type VertexId = usize;

/// Distance value used for vertices unreachable from a BFS source.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("invalid edge ({0}, {1}) in a graph of order {2}")]
    InvalidEdge(VertexId, VertexId, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: &'static str },
}

/// A finite simple undirected graph.
///
/// Adjacency lists are kept sorted. Connectivity is computed once at
/// construction; the strict constructors refuse disconnected input, while the
/// `_relaxed` variants record it so callers can check [`Graph::is_connected`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
    connected: bool,
}

impl Graph {
    /// Builds a connected graph from an edge list.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let g = Self::from_edge_list_relaxed(n, edges)?;
        if !g.connected {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Builds a simple graph without requiring connectivity.
    pub fn from_edge_list_relaxed<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(GraphError::InvalidEdge(u, v, n));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let mut g = Graph {
            adj,
            edge_count,
            connected: false,
        };
        g.connected = g.bfs_distances(0).iter().all(|&d| d != UNREACHABLE);
        Ok(g)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edge_list(n, (1..n).map(|v| (v - 1, v))).expect("paths are connected")
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edge_list(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycles are connected")
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edge_list(n, edges).expect("complete graphs are connected")
    }

    /// The star with center `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edge_list(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("stars are connected")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.order() && v < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Maximum degree at most four.
    pub fn is_chemical(&self) -> bool {
        self.max_degree() <= 4
    }

    pub fn is_tree(&self) -> bool {
        self.connected && self.edge_count + 1 == self.order()
    }

    /// Shortest-path distances from `source`; unreachable vertices get
    /// [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.order()];
        let mut queue = VecDeque::with_capacity(self.order());
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &v in &self.adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Returns a copy with the extra edge `uv`.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Self, GraphError> {
        let edges = self.edges().chain(std::iter::once((u, v)));
        Self::from_edge_list_relaxed(self.order(), edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[VertexId]) -> Self {
        assert_eq!(
            perm.len(),
            self.order(),
            "permutation length must equal the order"
        );
        let edges = self.edges().map(|(u, v)| (perm[u], perm[v]));
        Self::from_edge_list_relaxed(self.order(), edges)
            .expect("a permutation preserves simplicity")
    }

    /// Disjoint union: vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.order();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Self::from_edge_list_relaxed(shift + other.order(), edges).expect("union of simple graphs")
    }
}

/// Renders an undirected DOT document. With `labels`, each node statement
/// carries `label="<index>: <text>"`.
pub fn to_dot(g: &Graph, labels: Option<&[String]>) -> String {
    if let Some(labels) = labels {
        assert_eq!(labels.len(), g.order(), "one label per vertex");
    }
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        match labels {
            Some(labels) => {
                let text = labels[v].replace('\\', "\\\\").replace('"', "\\\"");
                writeln!(out, "  {v} [label=\"{v}: {text}\"];").unwrap();
            }
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
