//! Drawn example graphs: relative transmission labels, monotonicity of the
//! boxed subtrees and the edge-insertion witnesses.

mod common;

use std::collections::{BTreeSet, HashMap};

use common::Point;
use transirr::graph::{Graph, VertexId};
use transirr::structure::{
    distance_partition, doubling_check, doubling_construct, edge_add_case_i, edge_add_case_ii,
    is_dbtm, pendant_path_at_leaf,
};
use transirr::transmission::{is_transmission_irregular, transmissions_bfs};

fn assert_relative_labels(g: &Graph, idx: &HashMap<Point, VertexId>, labels: &[(Point, i64)]) {
    let tr = transmissions_bfs(g);
    let base = tr[idx[&labels[0].0]] as i64;
    assert_eq!(labels.len(), g.order());
    for &(p, label) in labels {
        assert_eq!(tr[idx[&p]] as i64 - base, label, "vertex {p:?}");
    }
}

#[test]
fn rule_i_drawing_labels_and_witnesses() {
    let (g, idx, labels) = common::rule_i_drawing();
    assert_eq!(g.order(), 21);
    assert!(!g.is_tree());
    assert_relative_labels(&g, &idx, &labels);
    assert!(is_transmission_irregular(&g));

    let added = edge_add_case_i(&g).unwrap().expect("rule (i) applies");
    assert_eq!(
        added.witnesses,
        [(5, 3), (4, 3), (4, 2), (4, 1)].map(|p| idx[&p])
    );
    assert!(is_transmission_irregular(&added.graph));
    assert_eq!(edge_add_case_ii(&g).unwrap(), None);
}

#[test]
fn rule_ii_drawing_labels_and_witnesses() {
    let (g, idx, labels) = common::rule_ii_drawing();
    assert_eq!(g.order(), 21);
    assert_relative_labels(&g, &idx, &labels);
    assert!(is_transmission_irregular(&g));

    let added = edge_add_case_ii(&g).unwrap().expect("rule (ii) applies");
    assert_eq!(
        added.witnesses,
        [(8, 1), (6, 2), (7, 1), (6, 1)].map(|p| idx[&p])
    );
    assert!(added.graph.has_edge(idx[&(6, 2)], idx[&(7, 1)]));
    assert!(is_transmission_irregular(&added.graph));
    assert_eq!(edge_add_case_i(&g).unwrap(), None);
}

#[test]
fn boxed_subtree_is_monotone() {
    let (g, idx, boxed) = common::monotone_drawing();
    assert_eq!(g.order(), 12);
    let subtree: Vec<VertexId> = boxed.iter().map(|p| idx[p]).collect();
    let root = idx[&(0, 1)];
    let partition = distance_partition(&g, &subtree, root).unwrap();
    let sizes: Vec<usize> = partition.layers.iter().map(Vec::len).collect();
    assert_eq!(sizes, [1, 2, 2, 1]);
    assert!(is_dbtm(&g, &subtree, root).unwrap());

    let tr = transmissions_bfs(&g);
    assert_eq!(tr[root], 30);
    let layer1: BTreeSet<u64> = partition.layers[1].iter().map(|&v| tr[v]).collect();
    assert_eq!(layer1, BTreeSet::from([34, 40]));
}

#[test]
fn non_monotone_subtree_still_doubles() {
    let (g, idx) = common::non_monotone_drawing();
    assert_eq!(g.order(), 11);
    let path = pendant_path_at_leaf(&g, idx[&(2, 1)]).unwrap();
    assert_eq!(path.root, idx[&(0, 1)]);
    assert_eq!(path.length(), 2);

    let report = doubling_check(&g, &path).unwrap();
    assert!(report.partially_ti);
    assert!(!report.dbtm);
    assert_eq!(report.window_j, None);
    assert!(!report.eligible);

    let tr = transmissions_bfs(&g);
    let partition = distance_partition(&g, &report.reduced, path.root).unwrap();
    let layers: Vec<BTreeSet<u64>> = partition
        .layers
        .iter()
        .map(|l| l.iter().map(|&v| tr[v]).collect())
        .collect();
    let expected: Vec<BTreeSet<u64>> = [&[21][..], &[20, 28], &[25, 27, 37], &[32, 36], &[41]]
        .iter()
        .map(|l| l.iter().copied().collect())
        .collect();
    assert_eq!(layers, expected);

    let doubled = doubling_construct(&g, &path).unwrap();
    assert_eq!(doubled.order(), 23);
    assert!(is_transmission_irregular(&doubled));
}
