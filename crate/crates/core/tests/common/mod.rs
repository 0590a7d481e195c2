//! Helpers shared by the integration tests: independent oracles that do not
//! reuse the library's generator or canonical forms.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use transirr::graph::{Graph, VertexId};

/// Decodes a Prüfer sequence over `0..n` into an edge list (`n >= 2`),
/// always removing the smallest current leaf.
pub fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// AHU encoding of the tree rooted at `root`.
fn ahu(adj: &[Vec<usize>], root: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = adj[root]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu(adj, w, root))
        .collect();
    children.sort_unstable();
    let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
    code.push(b'(');
    for c in children {
        code.extend_from_slice(&c);
    }
    code.push(b')');
    code
}

/// Center-rooted AHU string: equal iff the trees are isomorphic.
pub fn tree_canonical_form(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                if degree[w] == 0 {
                    continue;
                }
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
            degree[leaf] = 0;
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| ahu(&adj, c, usize::MAX))
        .min()
        .map_or_else(|| "()".to_string(), |c| String::from_utf8(c).unwrap())
}

pub fn graph_canonical_form(g: &Graph) -> String {
    tree_canonical_form(g.order(), &g.edges().collect::<Vec<_>>())
}

/// Canonical forms of all trees of order `n` with maximum degree at most
/// `cap`, from every labelled tree (Cayley: `n^(n-2)` of them).
pub fn naive_tree_forms(n: usize, cap: Option<usize>) -> BTreeSet<String> {
    let mut forms = BTreeSet::new();
    if n == 1 {
        forms.insert("()".to_string());
        return forms;
    }
    if n == 2 {
        if cap.is_none_or(|c| c >= 1) {
            forms.insert(tree_canonical_form(2, &[(0, 1)]));
        }
        return forms;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        let mut counts = vec![0usize; n];
        for &x in &seq {
            counts[x] += 1;
        }
        if cap.is_none_or(|c| counts.iter().all(|&k| k < c)) {
            forms.insert(tree_canonical_form(n, &prufer_edges(&seq, n)));
        }
        let mut i = 0;
        while i < len {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }
    forms
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    if n == 1 {
        return Graph::from_edge_list(1, []).unwrap();
    }
    if n == 2 {
        return Graph::path(2);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Graph::from_edge_list(n, prufer_edges(&seq, n)).unwrap()
}

/// A random spanning tree plus `extra` random additional edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges: BTreeSet<(usize, usize)> = tree.edges().collect();
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    Graph::from_edge_list(n, edges).unwrap()
}

pub type Point = (i32, i32);

/// Builds a graph from drawn paths of grid points; vertices are numbered in
/// order of first appearance.
pub fn drawn_graph(paths: &[&[Point]]) -> (Graph, HashMap<Point, VertexId>) {
    let mut index = HashMap::new();
    let mut edges = Vec::new();
    for path in paths {
        for &p in path.iter() {
            let next = index.len();
            index.entry(p).or_insert(next);
        }
        for w in path.windows(2) {
            edges.push((index[&w[0]], index[&w[1]]));
        }
    }
    (Graph::from_edge_list(index.len(), edges).unwrap(), index)
}

/// The order-21 graph drawn for edge-insertion rule (i); the returned point
/// is the reference vertex of its labels.
pub fn rule_i_drawing() -> (Graph, HashMap<Point, VertexId>, Vec<(Point, i64)>) {
    let (g, idx) = drawn_graph(&[
        &[
            (-3, 1),
            (-2, 1),
            (-1, 1),
            (0, 1),
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (4, 2),
            (4, 3),
            (5, 3),
        ],
        &[(-2, 1), (-2, 0), (-1, 0), (-1, 1)],
        &[(-1, 3), (-1, 2), (0, 2), (0, 1)],
        &[(-1, -1), (0, -1), (0, 0), (0, 1), (1, 2)],
        &[(0, 2), (-1, 3), (-2, 3)],
    ]);
    let labels = vec![
        ((0, 1), 0),
        ((1, 1), 7),
        ((2, 1), 16),
        ((3, 1), 27),
        ((4, 1), 40),
        ((4, 2), 55),
        ((4, 3), 72),
        ((5, 3), 91),
        ((1, 2), 19),
        ((0, 2), 13),
        ((-1, 3), 29),
        ((-2, 3), 48),
        ((-1, 2), 30),
        ((0, 0), 15),
        ((0, -1), 32),
        ((-1, -1), 51),
        ((-1, 1), 11),
        ((-2, 1), 26),
        ((-1, 0), 28),
        ((-2, 0), 43),
        ((-3, 1), 45),
    ];
    (g, idx, labels)
}

/// The order-21 graph drawn for edge-insertion rule (ii).
pub fn rule_ii_drawing() -> (Graph, HashMap<Point, VertexId>, Vec<(Point, i64)>) {
    let (g, idx) = drawn_graph(&[
        &[
            (-1, 1),
            (0, 1),
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 1),
            (7, 1),
            (8, 1),
        ],
        &[(-1, 2), (0, 2), (1, 2), (2, 2)],
        &[(0, 1), (0, 0), (-1, 0)],
        &[(0, 2), (0, 1)],
        &[(6, 2), (6, 1)],
        &[(0, -2), (-1, -1), (0, -1), (0, 0)],
        &[(0, -1), (0, -2), (1, -2)],
    ]);
    let labels = vec![
        ((0, 1), 0),
        ((-1, 1), 19),
        ((1, 1), 3),
        ((2, 1), 8),
        ((3, 1), 15),
        ((4, 1), 24),
        ((5, 1), 35),
        ((6, 1), 48),
        ((6, 2), 67),
        ((7, 1), 65),
        ((8, 1), 84),
        ((0, 2), 13),
        ((-1, 2), 32),
        ((1, 2), 30),
        ((2, 2), 49),
        ((0, 0), 9),
        ((0, -1), 22),
        ((1, -2), 57),
        ((0, -2), 38),
        ((-1, 0), 28),
        ((-1, -1), 39),
    ];
    (g, idx, labels)
}

/// The tree with a non-monotone subtree used to show the doubling hypotheses
/// are not necessary; `(0, 1)` is the path root, `(2, 1)` the leaf.
pub fn non_monotone_drawing() -> (Graph, HashMap<Point, VertexId>) {
    drawn_graph(&[
        &[(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)],
        &[(-2, 2), (-1, 2), (0, 2), (0, 1)],
        &[(0, 2), (0, 3), (-1, 3), (-2, 3)],
    ])
}

/// The tree with a monotone boxed subtree rooted at `(0, 1)`.
pub fn monotone_drawing() -> (Graph, HashMap<Point, VertexId>, Vec<Point>) {
    let (g, idx) = drawn_graph(&[
        &[
            (0, 2),
            (0, 1),
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 1),
        ],
        &[(-1, 3), (-1, 2), (-1, 1), (0, 1)],
        &[(-2, 1), (-1, 1)],
    ]);
    let boxed = vec![(0, 1), (0, 2), (-1, 1), (-1, 2), (-1, 3), (-2, 1)];
    (g, idx, boxed)
}
