//! Vertex transmissions (sums of distances), Wiener complexity and the
//! transmission irregularity test.
//!
//! Trees are handled by a two-pass rerooting: one pass computes subtree sizes
//! and the transmission of the root, the second propagates
//! `Tr(child) = Tr(parent) + n - 2 * size(child)` downwards. Every other graph
//! falls back to one BFS per vertex, which also serves as the test oracle for
//! the tree path.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, VertexId, UNREACHABLE};

/// Sum of distances from one vertex to all others, in edge hops.
pub type Transmission = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransmissionError {
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("subset is empty")]
    EmptySubset,
    #[error("vertex {0} is out of range")]
    InvalidVertex(VertexId),
}

/// Per-vertex transmissions together with the derived transmission set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransmissionProfile {
    values: Vec<Transmission>,
    set: BTreeSet<Transmission>,
}

impl TransmissionProfile {
    pub fn from_values(values: Vec<Transmission>) -> Self {
        let set = values.iter().copied().collect();
        TransmissionProfile { values, set }
    }

    pub fn values(&self) -> &[Transmission] {
        &self.values
    }

    /// The transmission set (distinct values).
    pub fn set(&self) -> &BTreeSet<Transmission> {
        &self.set
    }

    /// Wiener complexity: the number of distinct transmissions.
    pub fn complexity(&self) -> usize {
        self.set.len()
    }

    pub fn is_ti(&self) -> bool {
        self.set.len() == self.values.len()
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// Vertices sorted by decreasing transmission (ties by index).
    pub fn vertices_by_decreasing(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = (0..self.values.len()).collect();
        vs.sort_by(|&a, &b| self.values[b].cmp(&self.values[a]).then(a.cmp(&b)));
        vs
    }
}

fn assert_connected(g: &Graph) {
    assert!(g.is_connected(), "transmissions require a connected graph");
}

/// Transmission of a single vertex.
pub fn transmission(g: &Graph, v: VertexId) -> Transmission {
    assert_connected(g);
    g.bfs_distances(v).iter().map(|&d| d as Transmission).sum()
}

/// All transmissions by one BFS per vertex; O(n * m).
pub fn transmissions_bfs(g: &Graph) -> Vec<Transmission> {
    assert_connected(g);
    (0..g.order())
        .map(|v| {
            g.bfs_distances(v)
                .iter()
                .map(|&d| {
                    debug_assert_ne!(d, UNREACHABLE);
                    d as Transmission
                })
                .sum()
        })
        .collect()
}

/// Transmissions of a tree given as a parent array in topological order:
/// vertex 0 is the root and `parent[v] < v` for every `v >= 1`.
///
/// `size` is scratch space and is overwritten.
pub fn tree_transmissions_topological(
    parent: &[VertexId],
    size: &mut Vec<Transmission>,
    out: &mut Vec<Transmission>,
) {
    let n = parent.len();
    size.clear();
    size.resize(n, 1);
    out.clear();
    out.resize(n, 0);
    if n == 0 {
        return;
    }
    // depths reuse `out` before it receives the transmissions
    let mut root_total = 0;
    for v in 1..n {
        debug_assert!(parent[v] < v);
        out[v] = out[parent[v]] + 1;
        root_total += out[v];
    }
    for v in (1..n).rev() {
        size[parent[v]] += size[v];
    }
    let n = n as Transmission;
    out[0] = root_total;
    for v in 1..out.len() {
        out[v] = out[parent[v]] + n - 2 * size[v];
    }
}

/// Linear-time transmissions of a tree via rerooting.
pub fn tree_transmissions(g: &Graph) -> Vec<Transmission> {
    assert!(g.is_tree(), "rerooting requires a tree");
    let n = g.order();
    // BFS order from vertex 0, relabelled so parents precede children
    let mut order = Vec::with_capacity(n);
    let mut position = vec![usize::MAX; n];
    let mut parent = vec![0; n];
    order.push(0);
    position[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if position[w] == usize::MAX {
                position[w] = order.len();
                parent[order.len()] = position[u];
                order.push(w);
            }
        }
    }
    let mut size = Vec::new();
    let mut relabelled = Vec::new();
    tree_transmissions_topological(&parent, &mut size, &mut relabelled);
    let mut values = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        values[v] = relabelled[i];
    }
    values
}

/// Transmissions of every vertex, using rerooting when `g` is a tree.
pub fn transmissions(g: &Graph) -> Vec<Transmission> {
    if g.is_tree() {
        tree_transmissions(g)
    } else {
        transmissions_bfs(g)
    }
}

pub fn transmission_profile(g: &Graph) -> TransmissionProfile {
    TransmissionProfile::from_values(transmissions(g))
}

/// Wiener complexity of `g`.
pub fn wiener_complexity(g: &Graph) -> usize {
    transmission_profile(g).complexity()
}

/// True when all transmissions are pairwise distinct.
pub fn is_transmission_irregular(g: &Graph) -> bool {
    all_distinct(&transmissions(g))
}

/// True when the values are pairwise distinct.
pub fn all_distinct(values: &[Transmission]) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// For an edge `uv`: how many vertices are strictly closer to `u`, strictly
/// closer to `v`, or equidistant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CloserCounts {
    pub closer_to_u: usize,
    pub closer_to_v: usize,
    pub ties: usize,
}

pub fn closer_counts(
    g: &Graph,
    u: VertexId,
    v: VertexId,
) -> Result<CloserCounts, TransmissionError> {
    if !g.has_edge(u, v) {
        return Err(TransmissionError::NotAnEdge(u, v));
    }
    let du = g.bfs_distances(u);
    let dv = g.bfs_distances(v);
    let mut counts = CloserCounts {
        closer_to_u: 0,
        closer_to_v: 0,
        ties: 0,
    };
    for (a, b) in du.iter().zip(&dv) {
        match a.cmp(b) {
            std::cmp::Ordering::Less => counts.closer_to_u += 1,
            std::cmp::Ordering::Greater => counts.closer_to_v += 1,
            std::cmp::Ordering::Equal => counts.ties += 1,
        }
    }
    Ok(counts)
}

/// Whether the transmissions (taken in `g`) of the subset are pairwise distinct.
pub fn is_partially_ti(g: &Graph, subset: &[VertexId]) -> Result<bool, TransmissionError> {
    if subset.is_empty() {
        return Err(TransmissionError::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&v| v >= g.order()) {
        return Err(TransmissionError::InvalidVertex(bad));
    }
    let all = transmissions(g);
    let picked: Vec<_> = subset.iter().map(|&v| all[v]).collect();
    Ok(all_distinct(&picked))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3_order7() -> Graph {
        Graph::from_edge_list(7, [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (5, 6)]).unwrap()
    }

    fn fig3_order9() -> Graph {
        // center 0; 4-arm 1..=4; 1-arm 5; 3-arm 6..=8
        Graph::from_edge_list(
            9,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 5),
                (0, 6),
                (6, 7),
                (7, 8),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fig3_values() {
        let g = fig3_order7();
        assert_eq!(transmission(&g, 0), 10);
        let p = transmission_profile(&g);
        assert_eq!(p.values(), &[10, 11, 14, 19, 15, 13, 18]);
        assert!(p.is_ti());
        assert_eq!(p.complexity(), 7);

        let g9 = fig3_order9();
        assert_eq!(transmission(&g9, 4), 33);
        let p9 = transmission_profile(&g9);
        assert_eq!(
            p9.set().iter().copied().collect::<Vec<_>>(),
            vec![17, 18, 20, 21, 24, 25, 26, 32, 33]
        );
        assert!(p9.is_ti());
    }

    #[test]
    fn small_cases() {
        let p2 = Graph::path(2);
        assert_eq!(transmission(&p2, 0), 1);
        assert_eq!(transmission(&p2, 1), 1);
        assert!(!is_transmission_irregular(&Graph::path(3)));
        let c5 = transmission_profile(&Graph::cycle(5));
        assert_eq!(c5.values(), &[6; 5]);
        assert_eq!(c5.complexity(), 1);
        assert!(!c5.is_ti());
        // a single vertex is trivially irregular
        let k1 = Graph::from_edge_list(1, []).unwrap();
        assert!(is_transmission_irregular(&k1));
    }

    #[test]
    fn min_transmission_bound() {
        // n - 1, attained exactly by a dominating vertex
        let star = transmission_profile(&Graph::star(4));
        assert_eq!(star.values()[0], 4);
        let path = transmission_profile(&Graph::path(5));
        assert!(path.values().iter().all(|&t| t > 4));
    }

    #[test]
    fn closer_counts_examples() {
        let p3 = Graph::path(3);
        let c = closer_counts(&p3, 0, 1).unwrap();
        assert_eq!((c.closer_to_u, c.closer_to_v, c.ties), (1, 2, 0));

        // bipartite graphs have no equidistant vertices across an edge
        let c4 = Graph::cycle(4);
        let c = closer_counts(&c4, 1, 2).unwrap();
        assert_eq!((c.closer_to_u, c.closer_to_v, c.ties), (2, 2, 0));
        let c = closer_counts(&Graph::cycle(5), 0, 1).unwrap();
        assert_eq!((c.closer_to_u, c.closer_to_v, c.ties), (2, 2, 1));

        let g = fig3_order7();
        let c = closer_counts(&g, 0, 1).unwrap();
        assert_eq!((c.closer_to_u, c.closer_to_v), (4, 3));
        assert_eq!(transmission(&g, 1) - transmission(&g, 0), 1);

        assert_eq!(
            closer_counts(&g, 1, 3),
            Err(TransmissionError::NotAnEdge(1, 3))
        );
    }

    #[test]
    fn partial_irregularity() {
        let g = fig3_order7();
        assert_eq!(is_partially_ti(&g, &[3]), Ok(true));
        assert_eq!(is_partially_ti(&g, &[0, 1, 2, 3, 4, 5, 6]), Ok(true));
        assert_eq!(is_partially_ti(&Graph::path(3), &[0, 2]), Ok(false));
        assert_eq!(
            is_partially_ti(&g, &[]),
            Err(TransmissionError::EmptySubset)
        );
        assert_eq!(
            is_partially_ti(&g, &[7]),
            Err(TransmissionError::InvalidVertex(7))
        );
    }

    #[test]
    fn rerooting_matches_bfs_on_fixed_trees() {
        for g in [
            fig3_order7(),
            fig3_order9(),
            Graph::path(11),
            Graph::star(6),
        ] {
            assert_eq!(tree_transmissions(&g), transmissions_bfs(&g));
        }
    }

    #[test]
    fn decreasing_order_breaks_ties_by_index() {
        let p = TransmissionProfile::from_values(vec![3, 5, 5, 1]);
        assert_eq!(p.vertices_by_decreasing(), vec![1, 2, 0, 3]);
    }
}
