//! Pendant paths, distance-based partitions, layer monotonicity (DBTM), and
//! the two transformations that produce new TI graphs: doubling a tree along
//! a pendant path, and inserting one edge near the top transmissions.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexId, UNREACHABLE};
use crate::transmission::{is_partially_ti, transmissions, Transmission, TransmissionProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("subtree does not induce a connected subgraph containing the root")]
    NotConnectedSubtree,
    #[error("root {0} is a leaf of the subtree")]
    RootIsLeaf(VertexId),
    #[error("graph is not a tree")]
    NotATree,
    #[error("order {0} is below the minimum of 7")]
    BadOrder(usize),
    #[error("not a proper pendant path: {0}")]
    NotAProperPath(&'static str),
    #[error("graph is not transmission irregular")]
    NotTI,
    #[error("vertex {0} is out of range")]
    InvalidVertex(VertexId),
}

/// A proper pendant path: `root` (degree >= 3), `interior` (degree 2, listed
/// from the root side), `leaf` (degree 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PendantPath {
    pub root: VertexId,
    pub interior: Vec<VertexId>,
    pub leaf: VertexId,
}

impl PendantPath {
    /// Number of edges from root to leaf.
    pub fn length(&self) -> usize {
        self.interior.len() + 1
    }

    /// `v_1 = leaf, v_2, ..., v_{k+1} = root`.
    pub fn vertices_from_leaf(&self) -> Vec<VertexId> {
        std::iter::once(self.leaf)
            .chain(self.interior.iter().rev().copied())
            .chain(std::iter::once(self.root))
            .collect()
    }

    /// Checks adjacency and the degree conditions in `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), StructureError> {
        let seq = self.vertices_from_leaf();
        if seq.iter().any(|&v| v >= g.order()) {
            return Err(StructureError::NotAProperPath("vertex out of range"));
        }
        if seq.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return Err(StructureError::NotAProperPath(
                "consecutive vertices are not adjacent",
            ));
        }
        if g.degree(self.leaf) != 1 {
            return Err(StructureError::NotAProperPath(
                "leaf does not have degree 1",
            ));
        }
        if self.interior.iter().any(|&v| g.degree(v) != 2) {
            return Err(StructureError::NotAProperPath(
                "interior vertex does not have degree 2",
            ));
        }
        if g.degree(self.root) < 3 {
            return Err(StructureError::NotAProperPath("root has degree below 3"));
        }
        Ok(())
    }
}

/// The maximal proper pendant path ending at `leaf`, if `leaf` is a leaf
/// whose path reaches a vertex of degree at least 3.
pub fn pendant_path_at_leaf(g: &Graph, leaf: VertexId) -> Option<PendantPath> {
    if leaf >= g.order() || g.degree(leaf) != 1 {
        return None;
    }
    let mut prev = leaf;
    let mut cur = g.neighbors(leaf)[0];
    let mut walked = Vec::new();
    while g.degree(cur) == 2 {
        walked.push(cur);
        let next = g.neighbors(cur).iter().copied().find(|&w| w != prev)?;
        prev = cur;
        cur = next;
    }
    if g.degree(cur) < 3 {
        return None;
    }
    walked.reverse();
    Some(PendantPath {
        root: cur,
        interior: walked,
        leaf,
    })
}

/// All maximal proper pendant paths, ordered by leaf index.
pub fn find_pendant_paths(g: &Graph) -> Vec<PendantPath> {
    (0..g.order())
        .filter_map(|v| pendant_path_at_leaf(g, v))
        .collect()
}

/// Layers `V_0 = {root}, V_1, ..., V_a` of a subtree by internal distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistancePartition {
    pub root: VertexId,
    pub layers: Vec<Vec<VertexId>>,
}

impl DistancePartition {
    /// Eccentricity of the root inside the subtree.
    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }
}

pub fn distance_partition(
    g: &Graph,
    subtree: &[VertexId],
    root: VertexId,
) -> Result<DistancePartition, StructureError> {
    let n = g.order();
    if let Some(&v) = subtree
        .iter()
        .chain(std::iter::once(&root))
        .find(|&&v| v >= n)
    {
        return Err(StructureError::InvalidVertex(v));
    }
    let mut member = vec![false; n];
    for &v in subtree {
        member[v] = true;
    }
    if !member[root] {
        return Err(StructureError::NotConnectedSubtree);
    }
    let mut dist = vec![UNREACHABLE; n];
    let mut layers: Vec<Vec<VertexId>> = vec![vec![root]];
    let mut queue = VecDeque::from([root]);
    dist[root] = 0;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if member[w] && dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                if layers.len() <= dist[w] {
                    layers.push(Vec::new());
                }
                layers[dist[w]].push(w);
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    let members = member.iter().filter(|&&m| m).count();
    if reached != members {
        return Err(StructureError::NotConnectedSubtree);
    }
    if layers.get(1).map_or(0, Vec::len) <= 1 {
        return Err(StructureError::RootIsLeaf(root));
    }
    for layer in &mut layers {
        layer.sort_unstable();
    }
    Ok(DistancePartition { root, layers })
}

fn layer_extremes(tr: &[Transmission], layer: &[VertexId]) -> (Transmission, Transmission) {
    let values = layer.iter().map(|&v| tr[v]);
    (values.clone().min().unwrap(), values.max().unwrap())
}

/// DBTM test: `min Tr(V_{j+1}) >= max Tr(V_j)` for `j = 1..a-1`, with
/// transmissions taken in `g` (the ambient graph).
pub fn is_dbtm(g: &Graph, subtree: &[VertexId], root: VertexId) -> Result<bool, StructureError> {
    let partition = distance_partition(g, subtree, root)?;
    let tr = transmissions(g);
    Ok(layers_monotone(&tr, &partition.layers, 1))
}

/// `min Tr(V_{j+1}) >= max Tr(V_{j+1-gap})` for every `j` with
/// `j + 1 - gap >= 1`.
fn layers_monotone(tr: &[Transmission], layers: &[Vec<VertexId>], gap: usize) -> bool {
    let ext: Vec<_> = layers.iter().map(|l| layer_extremes(tr, l)).collect();
    (1 + gap..ext.len()).all(|hi| ext[hi].0 >= ext[hi - gap].1)
}

/// 2-DBTM test over the whole tree rooted at `root`:
/// `min Tr(V_{j+1}) >= max Tr(V_{j-1})` for `j = 2..a-1`.
pub fn is_2_dbtm(g: &Graph, root: VertexId) -> Result<bool, StructureError> {
    if !g.is_tree() {
        return Err(StructureError::NotATree);
    }
    if root >= g.order() {
        return Err(StructureError::InvalidVertex(root));
    }
    let dist = g.bfs_distances(root);
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, &d) in dist.iter().enumerate() {
        layers[d].push(v);
    }
    Ok(layers_monotone(&transmissions(g), &layers, 2))
}

/// Eligibility of a (tree, pendant path) pair for the doubling construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingReport {
    /// Path length `k`.
    pub path_length: usize,
    /// `T_0^*`: the tree minus every path vertex except the root.
    pub reduced: Vec<VertexId>,
    pub partially_ti: bool,
    pub dbtm: bool,
    /// Smallest `j` in `1..=k` with `j^2 + 1 < 2n < (j+1)^2`.
    pub window_j: Option<usize>,
    pub eligible: bool,
}

fn doubling_preconditions(t0: &Graph, path: &PendantPath) -> Result<(), StructureError> {
    if !t0.is_tree() {
        return Err(StructureError::NotATree);
    }
    if t0.order() < 7 {
        return Err(StructureError::BadOrder(t0.order()));
    }
    path.validate(t0)
}

/// Smallest `j` in `1..=k` whose open window `(j^2 + 1, (j + 1)^2)` contains
/// `2n`.
pub fn doubling_window(n: usize, k: usize) -> Option<usize> {
    let two_n = 2 * n;
    (1..=k).find(|&j| j * j + 1 < two_n && two_n < (j + 1) * (j + 1))
}

pub fn doubling_check(t0: &Graph, path: &PendantPath) -> Result<DoublingReport, StructureError> {
    doubling_preconditions(t0, path)?;
    let mut removed = vec![false; t0.order()];
    removed[path.leaf] = true;
    for &v in &path.interior {
        removed[v] = true;
    }
    let reduced: Vec<VertexId> = (0..t0.order()).filter(|&v| !removed[v]).collect();
    let partially_ti = is_partially_ti(t0, &reduced).expect("reduced set is nonempty and in range");
    let dbtm = is_dbtm(t0, &reduced, path.root)?;
    let window_j = doubling_window(t0.order(), path.length());
    Ok(DoublingReport {
        path_length: path.length(),
        reduced,
        partially_ti,
        dbtm,
        window_j,
        eligible: partially_ti && dbtm && window_j.is_some(),
    })
}

/// Joins `t0` to a copy of itself (vertex `v` becomes `v + n`) by the edge
/// between the two path leaves, then hangs a new leaf `w = 2n` on the
/// original leaf. Eligibility is not required.
pub fn doubling_construct(t0: &Graph, path: &PendantPath) -> Result<Graph, StructureError> {
    doubling_preconditions(t0, path)?;
    let n = t0.order();
    let edges = t0
        .edges()
        .chain(t0.edges().map(|(u, v)| (u + n, v + n)))
        .chain([(path.leaf, path.leaf + n), (path.leaf, 2 * n)]);
    Ok(Graph::from_edge_list(2 * n + 1, edges).expect("doubling a tree yields a tree"))
}

/// Output of an edge-insertion rule: the new graph and the witnesses
/// `v1..v4` in the rule's naming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAddition {
    pub graph: Graph,
    pub witnesses: [VertexId; 4],
}

fn top_three(g: &Graph) -> Result<(TransmissionProfile, [VertexId; 3]), StructureError> {
    let profile = TransmissionProfile::from_values(transmissions(g));
    if !profile.is_ti() {
        return Err(StructureError::NotTI);
    }
    let order = profile.vertices_by_decreasing();
    if order.len() < 4 {
        return Err(StructureError::BadOrder(order.len()));
    }
    Ok((profile, [order[0], order[1], order[2]]))
}

/// Rule (i): the three largest transmissions `v1 > v2 > v3` lie on a
/// pendant path `v4 v3 v2 v1` (`v1` a pendant vertex, `v2` and `v3` of degree
/// 2, `v4` the next vertex of any degree); adds the edge `v2 v4`.
pub fn edge_add_case_i(g: &Graph) -> Result<Option<EdgeAddition>, StructureError> {
    let (_, [v1, v2, v3]) = top_three(g)?;
    let chain = g.degree(v1) == 1
        && g.degree(v2) == 2
        && g.degree(v3) == 2
        && g.has_edge(v1, v2)
        && g.has_edge(v2, v3);
    if !chain {
        return Ok(None);
    }
    let v4 = g
        .neighbors(v3)
        .iter()
        .copied()
        .find(|&w| w != v2)
        .expect("v3 has degree 2");
    let graph = g.with_edge(v2, v4).expect("v2 and v4 are at distance 2");
    Ok(Some(EdgeAddition {
        graph,
        witnesses: [v1, v2, v3, v4],
    }))
}

/// Rule (ii): `v1`, `v2` (the two largest) are pendant, `v1 ~ v3`, `v2` and
/// `v3` have exactly one common neighbor `v4`, and `Tr(v3) - 1 > Tr(z)` for
/// every other `z`; adds the edge `v2 v3`.
pub fn edge_add_case_ii(g: &Graph) -> Result<Option<EdgeAddition>, StructureError> {
    let (profile, [v1, v2, v3]) = top_three(g)?;
    let tr = profile.values();
    if g.degree(v1) != 1 || g.degree(v2) != 1 || !g.has_edge(v1, v3) || g.has_edge(v2, v3) {
        return Ok(None);
    }
    let common: Vec<VertexId> = g
        .neighbors(v2)
        .iter()
        .copied()
        .filter(|&w| g.has_edge(w, v3))
        .collect();
    let [v4] = common[..] else {
        return Ok(None);
    };
    let gap_ok = (0..g.order())
        .filter(|&z| z != v1 && z != v2 && z != v3)
        .all(|z| tr[v3] - 1 > tr[z]);
    if !gap_ok {
        return Ok(None);
    }
    let graph = g.with_edge(v2, v3).expect("v2 and v3 are not adjacent");
    Ok(Some(EdgeAddition {
        graph,
        witnesses: [v1, v2, v3, v4],
    }))
}

/// Number of instances of a distance law that were checked, and how many
/// failed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LawTally {
    pub checked: usize,
    pub violations: usize,
}

impl LawTally {
    fn record(&mut self, holds: bool) {
        self.checked += 1;
        self.violations += usize::from(!holds);
    }

    pub fn merge(self, other: LawTally) -> LawTally {
        LawTally {
            checked: self.checked + other.checked,
            violations: self.violations + other.violations,
        }
    }
}

/// `Tr(u) - Tr(v) = n_v - n_u` on every edge `uv` (order above 2).
pub fn check_edge_law(g: &Graph) -> LawTally {
    let mut tally = LawTally::default();
    if g.order() <= 2 {
        return tally;
    }
    let tr = transmissions(g);
    let dist: Vec<Vec<usize>> = (0..g.order()).map(|v| g.bfs_distances(v)).collect();
    for (u, v) in g.edges() {
        let n_u = dist[u].iter().zip(&dist[v]).filter(|(a, b)| a < b).count() as i64;
        let n_v = dist[u].iter().zip(&dist[v]).filter(|(a, b)| a > b).count() as i64;
        tally.record(tr[u] as i64 - tr[v] as i64 == n_v - n_u);
    }
    tally
}

/// For every proper pendant path of length `x < n/2` with root `v`, the
/// root's path neighbour `w` satisfies `Tr(w) - Tr(v) = n - 2x`.
pub fn check_pendant_law(g: &Graph) -> LawTally {
    let mut tally = LawTally::default();
    let n = g.order() as i64;
    let tr = transmissions(g);
    for path in find_pendant_paths(g) {
        let x = path.length() as i64;
        if 2 * x >= n {
            continue;
        }
        let w = path.interior.first().copied().unwrap_or(path.leaf);
        tally.record(tr[w] as i64 - tr[path.root] as i64 == n - 2 * x);
    }
    tally
}

/// On every weak internal path `v v_1 ... v_k v*` of a tree with
/// `a = Tr(v_1) - Tr(v) > 0`: `Tr(v_j) - Tr(v) = j (a + j - 1)`.
pub fn check_internal_law(g: &Graph) -> Result<LawTally, StructureError> {
    if !g.is_tree() {
        return Err(StructureError::NotATree);
    }
    let mut tally = LawTally::default();
    let tr = transmissions(g);
    for v in (0..g.order()).filter(|&v| g.degree(v) >= 2) {
        for &first in g.neighbors(v).iter().filter(|&&w| g.degree(w) == 2) {
            let mut walk = vec![first];
            let mut prev = v;
            let mut cur = first;
            while g.degree(cur) == 2 {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .unwrap();
                prev = cur;
                cur = next;
                walk.push(cur);
            }
            // `cur` is the far terminal; it must not be a leaf
            if g.degree(cur) < 2 {
                continue;
            }
            walk.pop();
            let base = tr[v] as i64;
            let a = tr[first] as i64 - base;
            if a <= 0 {
                continue;
            }
            for (j, &u) in walk.iter().enumerate() {
                let j = j as i64 + 1;
                tally.record(tr[u] as i64 - base == j * (a + j - 1));
            }
        }
    }
    Ok(tally)
}
