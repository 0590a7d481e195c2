//! Constructors for the TI graph families and closed forms for their
//! transmission sets.
//!
//! Labeling scheme, shared by every constructor: core vertices come first in
//! a fixed order, then each pendant path in attachment order, listed from the
//! vertex next to its root outwards. The `*_layout` functions expose the
//! vertex ids of every core vertex and path so tests can address them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::setfam::IntSetFamily;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("BadArity: a starlike tree needs at least 3 arms, got {0}")]
    BadArity(usize),
    #[error("BadLength: {0}")]
    BadLength(String),
    #[error("BadOrder: {0}")]
    BadOrder(String),
    #[error("BadParam: {0}")]
    BadParam(String),
    #[error("syntax error in family spec {0:?}: {1}")]
    Syntax(String, String),
}

/// Appends a path of `len` new vertices hanging from `root`; returns them
/// root-outward.
fn attach_path(
    edges: &mut Vec<(VertexId, VertexId)>,
    next: &mut VertexId,
    root: VertexId,
    len: usize,
) -> Vec<VertexId> {
    let mut prev = root;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        edges.push((prev, *next));
        out.push(*next);
        prev = *next;
        *next += 1;
    }
    out
}

/// Starlike tree `T(n_1, ..., n_k)`: branching vertex 0 with arms of the
/// given lengths, labelled arm by arm.
pub fn starlike(arms: &[usize]) -> Result<Graph, FamilyError> {
    if arms.len() < 3 {
        return Err(FamilyError::BadArity(arms.len()));
    }
    if let Some(i) = arms.iter().position(|&a| a == 0) {
        return Err(FamilyError::BadLength(format!(
            "arm {} has length 0",
            i + 1
        )));
    }
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        attach_path(&mut edges, &mut next, 0, len);
    }
    Ok(Graph::from_edge_list(next, edges).expect("starlike trees are connected"))
}

/// Vertex layout of `H^k(a1, a2; b1, b2)`.
#[derive(Clone, Debug)]
pub struct HTreeLayout {
    pub graph: Graph,
    /// Branching vertex of `T(a1, a2, k)` (vertex 0).
    pub center: VertexId,
    /// Far end of the k-arm where the `b` paths hang (vertex 1).
    pub junction: VertexId,
    /// Interior of the k-arm, from `center` towards `junction`.
    pub k_arm: Vec<VertexId>,
    pub a1: Vec<VertexId>,
    pub a2: Vec<VertexId>,
    pub b1: Vec<VertexId>,
    pub b2: Vec<VertexId>,
}

pub fn h_tree_layout(
    k: usize,
    a1: usize,
    a2: usize,
    b1: usize,
    b2: usize,
) -> Result<HTreeLayout, FamilyError> {
    for (name, v) in [("k", k), ("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2)] {
        if v == 0 {
            return Err(FamilyError::BadLength(format!("{name} must be at least 1")));
        }
    }
    let (center, junction) = (0, 1);
    let mut edges = Vec::new();
    let mut next = 2;
    let k_arm = attach_path(&mut edges, &mut next, center, k - 1);
    edges.push((k_arm.last().copied().unwrap_or(center), junction));
    let a1 = attach_path(&mut edges, &mut next, center, a1);
    let a2 = attach_path(&mut edges, &mut next, center, a2);
    let b1 = attach_path(&mut edges, &mut next, junction, b1);
    let b2 = attach_path(&mut edges, &mut next, junction, b2);
    let graph = Graph::from_edge_list(next, edges).expect("H-trees are connected");
    Ok(HTreeLayout {
        graph,
        center,
        junction,
        k_arm,
        a1,
        a2,
        b1,
        b2,
    })
}

/// `H^k(a1, a2; b1, b2)`: `T(a1, a2, k)` with paths of lengths `b1`, `b2`
/// attached at the leaf of its k-arm.
pub fn h_tree(k: usize, a1: usize, a2: usize, b1: usize, b2: usize) -> Result<Graph, FamilyError> {
    h_tree_layout(k, a1, a2, b1, b2).map(|l| l.graph)
}

const SPORADIC_7: [(VertexId, VertexId); 6] = [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (5, 6)];
const SPORADIC_9: [(VertexId, VertexId); 8] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (0, 5),
    (0, 6),
    (6, 7),
    (7, 8),
];

/// Which H-tree (if any) realizes an odd order `n >= 11`.
fn odd_order_parameters(n: usize) -> Option<(usize, usize, usize, usize, usize)> {
    if n < 11 || n.is_multiple_of(2) {
        return None;
    }
    if n % 4 == 3 {
        let a = (n - 3) / 4;
        Some((2, a - 1, a, a, a + 1))
    } else {
        let b = (n - 1) / 4;
        Some((2, b - 2, b - 1, b, b + 1))
    }
}

/// A TI chemical tree of odd order `n >= 7`.
///
/// Orders 7 and 9 use the two sporadic trees (starlike `T(3,1,2)` and
/// `T(4,1,3)` in this labeling); `n = 4a+3` uses `H^2(a-1, a; a, a+1)` and
/// `n = 4b+1` uses `H^2(b-2, b-1; b, b+1)`.
pub fn ti_odd_tree(n: usize) -> Result<Graph, FamilyError> {
    match n {
        7 => Ok(Graph::from_edge_list(7, SPORADIC_7).expect("valid tree")),
        9 => Ok(Graph::from_edge_list(9, SPORADIC_9).expect("valid tree")),
        _ => match odd_order_parameters(n) {
            Some((k, a1, a2, b1, b2)) => h_tree(k, a1, a2, b1, b2),
            None => Err(FamilyError::BadOrder(format!(
                "order must be odd and at least 7, got {n}"
            ))),
        },
    }
}

/// Vertex layout of `Z_0` with four pendant paths. `Z_0` is `K_4` minus the
/// edge `u1 u2`; `v1`, `v2` are its degree-3 vertices.
#[derive(Clone, Debug)]
pub struct Z0Layout {
    pub graph: Graph,
    pub v1: VertexId,
    pub v2: VertexId,
    pub u1: VertexId,
    pub u2: VertexId,
    pub q1: Vec<VertexId>,
    pub q2: Vec<VertexId>,
    pub p1: Vec<VertexId>,
    pub p2: Vec<VertexId>,
}

/// Core order `v1 = 0, v2 = 1, u1 = 2, u2 = 3`; paths `q1, q2, p1, p2` follow
/// in that order. A zero length attaches nothing.
pub fn z0_layout(q2: usize, q1: usize, p2: usize, p1: usize) -> Z0Layout {
    let (v1, v2, u1, u2) = (0, 1, 2, 3);
    let mut edges = vec![(v1, v2), (v1, u1), (v1, u2), (v2, u1), (v2, u2)];
    let mut next = 4;
    let q1 = attach_path(&mut edges, &mut next, v1, q1);
    let q2 = attach_path(&mut edges, &mut next, v2, q2);
    let p1 = attach_path(&mut edges, &mut next, u1, p1);
    let p2 = attach_path(&mut edges, &mut next, u2, p2);
    let graph = Graph::from_edge_list(next, edges).expect("Z0 graphs are connected");
    Z0Layout {
        graph,
        v1,
        v2,
        u1,
        u2,
        q1,
        q2,
        p1,
        p2,
    }
}

/// `Z_0` with paths of lengths `q2`, `q1` at the degree-3 vertices `v2`, `v1`
/// and `p2`, `p1` at the degree-2 vertices `u2`, `u1`.
pub fn z0_graph(q2: usize, q1: usize, p2: usize, p1: usize) -> Graph {
    z0_layout(q2, q1, p2, p1).graph
}

fn require_a(a: usize, min: usize) -> Result<(), FamilyError> {
    if a < min {
        return Err(FamilyError::BadParam(format!(
            "a must be at least {min}, got {a}"
        )));
    }
    Ok(())
}

/// `Z_0(a-1, a+1; a-2, a+2)` for `a >= 2`.
pub fn z0_instance(a: usize) -> Result<Z0Layout, FamilyError> {
    require_a(a, 2)?;
    Ok(z0_layout(a - 1, a + 1, a - 2, a + 2))
}

/// Closed-form TI status of `Z_0(a-1, a+1; a-2, a+2)`: `a` odd and
/// `a mod 3 != 1`.
pub fn z0_is_ti_predicate(a: usize) -> Result<bool, FamilyError> {
    require_a(a, 2)?;
    Ok(a % 2 == 1 && a % 3 != 1)
}

/// Vertex layout of `K_4(k1, k2, k3, k4)`.
#[derive(Clone, Debug)]
pub struct K4Layout {
    pub graph: Graph,
    /// `paths[i]` hangs from core vertex `i`.
    pub paths: [Vec<VertexId>; 4],
}

/// `K_4` on vertices 0..=3 with a path of length `lengths[i]` at vertex `i`.
pub fn k4_layout(lengths: [usize; 4]) -> K4Layout {
    let mut edges: Vec<_> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
        .collect();
    let mut next = 4;
    let paths = [0, 1, 2, 3].map(|i| attach_path(&mut edges, &mut next, i, lengths[i]));
    let graph = Graph::from_edge_list(next, edges).expect("K4 graphs are connected");
    K4Layout { graph, paths }
}

pub fn k4_pendant(k1: usize, k2: usize, k3: usize, k4: usize) -> Graph {
    k4_layout([k1, k2, k3, k4]).graph
}

/// `K_4(a-2, a-1, a+1, a+2)` for `a >= 2`.
pub fn k4_instance(a: usize) -> Result<K4Layout, FamilyError> {
    require_a(a, 2)?;
    Ok(k4_layout([a - 2, a - 1, a + 1, a + 2]))
}

/// Closed-form TI status of `K_4(a-2, a-1, a+1, a+2)`: `a >= 3` and
/// `a mod 3 != 2`.
pub fn k4_is_ti_predicate(a: usize) -> Result<bool, FamilyError> {
    require_a(a, 2)?;
    Ok(a >= 3 && a % 3 != 2)
}

/// For `0 < a < b`: `b^2 - a^2`, `b - a` and `b + a` share a parity.
pub fn squares_parity_consistent(a: u64, b: u64) -> bool {
    let d = (b * b - a * a) % 2;
    d == (b - a) % 2 && d == (b + a) % 2
}

/// One closed-form set of transmission offsets and the vertices it covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedPart {
    pub name: &'static str,
    /// Offsets from the base transmission, in formula index order.
    pub values: Vec<i64>,
    /// The vertex carrying each value (same order as `values`).
    pub vertices: Vec<VertexId>,
}

/// Predicted transmissions relative to `Tr(base_vertex)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedSets {
    pub base_vertex: VertexId,
    pub parts: Vec<PredictedPart>,
    /// Vertices outside every part whose offsets are fixed directly.
    pub anchors: Vec<(VertexId, i64)>,
}

impl PredictedSets {
    pub fn family(&self) -> IntSetFamily {
        IntSetFamily::new(
            self.parts
                .iter()
                .map(|p| p.values.iter().copied().collect::<BTreeSet<_>>())
                .collect(),
        )
        .expect("predicted parts are nonempty")
    }

    /// Every predicted offset, parts and anchors, sorted (a multiset).
    pub fn all_values(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .parts
            .iter()
            .flat_map(|p| p.values.iter().copied())
            .chain(self.anchors.iter().map(|&(_, x)| x))
            .collect();
        v.sort_unstable();
        v
    }

    /// `(vertex, predicted offset)` for every covered vertex.
    pub fn assignments(&self) -> Vec<(VertexId, i64)> {
        self.parts
            .iter()
            .flat_map(|p| p.vertices.iter().copied().zip(p.values.iter().copied()))
            .chain(self.anchors.iter().copied())
            .collect()
    }

    /// Whether every vertex of `g` is covered exactly once and carries its
    /// predicted offset from `Tr(base_vertex)`.
    pub fn matches_graph(&self, g: &Graph) -> bool {
        let tr = crate::transmission::transmissions(g);
        let base = tr[self.base_vertex] as i64;
        let mut seen = vec![false; g.order()];
        for (v, off) in self.assignments() {
            if v >= g.order() || std::mem::replace(&mut seen[v], true) || tr[v] as i64 - base != off
            {
                return false;
            }
        }
        seen.iter().all(|&s| s)
    }
}

fn part(
    name: &'static str,
    range: std::ops::RangeInclusive<i64>,
    vertices: Vec<VertexId>,
    f: impl Fn(i64) -> i64,
) -> PredictedPart {
    let values: Vec<i64> = range.map(f).collect();
    debug_assert_eq!(values.len(), vertices.len(), "part {name} size");
    PredictedPart {
        name,
        values,
        vertices,
    }
}

fn with_root(root: VertexId, path: &[VertexId]) -> Vec<VertexId> {
    std::iter::once(root).chain(path.iter().copied()).collect()
}

/// Closed-form transmission offsets of [`ti_odd_tree`] for odd `n >= 11`.
///
/// For `n = 4a+3` the base is the junction `u` (anchors `u, v, w` at
/// `0, 1, 4`); for `n = 4b+1` the base is the junction `z1` (anchors
/// `z1, z2, z3` at `0, 3, 8`). Both are vertex 1 in the H-tree labeling.
pub fn predicted_sets_theorem_cti(n: usize) -> Result<PredictedSets, FamilyError> {
    let (k, a1, a2, b1, b2) = odd_order_parameters(n).ok_or_else(|| {
        FamilyError::BadOrder(format!("order must be odd and at least 11, got {n}"))
    })?;
    let l = h_tree_layout(k, a1, a2, b1, b2)?;
    let mid = l.k_arm[0];
    if n % 4 == 3 {
        let a = ((n - 3) / 4) as i64;
        Ok(PredictedSets {
            base_vertex: l.junction,
            parts: vec![
                part("A1", 1..=a - 1, l.a1, |k| 2 * k * a + (k + 2) * (k + 2)),
                part("A2", 1..=a, l.b1, |k| 2 * k * a + (k + 1) * (k + 1) - 1),
                part("A3", 1..=a, l.a2, |k| 2 * k * a + (k + 1) * (k + 1) - 1 + 4),
                part("A4", 1..=a + 1, l.b2, |k| 2 * k * a + k * k),
            ],
            anchors: vec![(l.junction, 0), (mid, 1), (l.center, 4)],
        })
    } else {
        let b = ((n - 1) / 4) as i64;
        Ok(PredictedSets {
            base_vertex: l.junction,
            parts: vec![
                part("B1", 1..=b + 1, l.b2, |k| 2 * k * b + k * k - 2 * k),
                part("B2", 1..=b, l.b1, |k| 2 * k * b + k * k),
                part("B3", 1..=b - 1, l.a2, |k| {
                    2 * k * b + (k + 1) * (k + 1) - 1 + 8
                }),
                part("B4", 1..=b - 2, l.a1, |k| {
                    2 * k * b + (k + 2) * (k + 2) - 4 + 8
                }),
            ],
            anchors: vec![(l.junction, 0), (mid, 3), (l.center, 8)],
        })
    }
}

/// Closed-form transmission offsets of `Z_0(a-1, a+1; a-2, a+2)` relative to
/// `Tr(v1)`, for `a >= 3`. Parts are `A1` (path at `u1`), `A2` (at `u2`),
/// `B1` (at `v1`), `B2` (at `v2`), each including its root.
pub fn predicted_sets_z0(a: usize) -> Result<PredictedSets, FamilyError> {
    require_a(a, 3)?;
    let l = z0_instance(a)?;
    let a = a as i64;
    Ok(PredictedSets {
        base_vertex: l.v1,
        parts: vec![
            part("A1", 0..=a + 2, with_root(l.u1, &l.p1), |j| {
                (2 * j + 1) * a + (j - 2) * (j + 1)
            }),
            part("A2", 0..=a - 2, with_root(l.u2, &l.p2), |j| {
                (2 * j + 1) * a + (j + 6) * (j + 1)
            }),
            part("B1", 0..=a + 1, with_root(l.v1, &l.q1), |j| {
                2 * j * a + j * (j + 1)
            }),
            part("B2", 0..=a - 1, with_root(l.v2, &l.q2), |j| {
                2 * j * a + j * (j + 5) + 2
            }),
        ],
        anchors: vec![],
    })
}

/// Closed-form transmission offsets of `K_4(a-2, a-1, a+1, a+2)` relative to
/// the root of the longest path (core vertex 3), for `a >= 3`. Part `A_i`
/// covers the path of length `a+2`, `a+1`, `a-1`, `a-2` respectively,
/// including its root.
pub fn predicted_sets_k4(a: usize) -> Result<PredictedSets, FamilyError> {
    require_a(a, 3)?;
    let l = k4_instance(a)?;
    let a = a as i64;
    let [p0, p1, p2, p3] = l.paths;
    Ok(PredictedSets {
        base_vertex: 3,
        parts: vec![
            part("A1", 0..=a + 2, with_root(3, &p3), |j| {
                2 * j * a + j * (j - 1)
            }),
            part("A2", 0..=a + 1, with_root(2, &p2), |j| {
                2 * j * a + j * (j + 1) + 1
            }),
            part("A3", 0..=a - 1, with_root(1, &p1), |j| {
                2 * j * a + (j + 1) * (j + 4) - 1
            }),
            part("A4", 0..=a - 2, with_root(0, &p0), |j| {
                2 * j * a + j * (j + 7) + 4
            }),
        ],
        anchors: vec![],
    })
}

/// A named graph family with its parameters, written as text like
/// `starlike:1,2,3`, `h:2;2,3;3,4`, `z0:2,4,1,5`, `k4:1,2,4,5` or `ti-odd:11`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Starlike(Vec<usize>),
    HTree {
        k: usize,
        a: [usize; 2],
        b: [usize; 2],
    },
    /// Lengths `q2, q1, p2, p1` as in [`z0_graph`].
    Z0([usize; 4]),
    K4Pendant([usize; 4]),
    TiOdd(usize),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, FamilyError> {
        match self {
            FamilySpec::Starlike(arms) => starlike(arms),
            FamilySpec::HTree { k, a, b } => h_tree(*k, a[0], a[1], b[0], b[1]),
            FamilySpec::Z0([q2, q1, p2, p1]) => Ok(z0_graph(*q2, *q1, *p2, *p1)),
            FamilySpec::K4Pendant([k1, k2, k3, k4]) => Ok(k4_pendant(*k1, *k2, *k3, *k4)),
            FamilySpec::TiOdd(n) => ti_odd_tree(*n),
        }
    }
}

fn parse_lengths(text: &str, list: &str) -> Result<Vec<usize>, FamilyError> {
    list.split(',')
        .map(|s| {
            let s = s.trim();
            let value: i64 = s.parse().map_err(|_| {
                FamilyError::Syntax(text.to_string(), format!("{s:?} is not an integer"))
            })?;
            usize::try_from(value)
                .map_err(|_| FamilyError::BadLength(format!("length {value} is negative")))
        })
        .collect()
}

fn exactly<const N: usize>(text: &str, values: Vec<usize>) -> Result<[usize; N], FamilyError> {
    let got = values.len();
    values.try_into().map_err(|_| {
        FamilyError::Syntax(text.to_string(), format!("expected {N} values, got {got}"))
    })
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = |why: &str| FamilyError::Syntax(text.to_string(), why.to_string());
        let (kind, args) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| syntax("expected <kind>:<parameters>"))?;
        match kind {
            "starlike" => Ok(FamilySpec::Starlike(parse_lengths(text, args)?)),
            "h" => {
                let groups: Vec<&str> = args.split(';').collect();
                let [k, a, b] = groups[..] else {
                    return Err(syntax("expected h:k;a1,a2;b1,b2"));
                };
                let [k] = exactly::<1>(text, parse_lengths(text, k)?)?;
                let a = exactly::<2>(text, parse_lengths(text, a)?)?;
                let b = exactly::<2>(text, parse_lengths(text, b)?)?;
                Ok(FamilySpec::HTree { k, a, b })
            }
            "z0" => Ok(FamilySpec::Z0(exactly(text, parse_lengths(text, args)?)?)),
            "k4" => Ok(FamilySpec::K4Pendant(exactly(
                text,
                parse_lengths(text, args)?,
            )?)),
            "ti-odd" => {
                let [n] = exactly::<1>(text, parse_lengths(text, args)?)?;
                Ok(FamilySpec::TiOdd(n))
            }
            other => Err(syntax(&format!(
                "unknown family {other:?} (expected starlike, h, z0, k4 or ti-odd)"
            ))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Starlike(arms) => write!(f, "starlike:{}", join(arms)),
            FamilySpec::HTree { k, a, b } => write!(f, "h:{k};{};{}", join(a), join(b)),
            FamilySpec::Z0(v) => write!(f, "z0:{}", join(v)),
            FamilySpec::K4Pendant(v) => write!(f, "k4:{}", join(v)),
            FamilySpec::TiOdd(n) => write!(f, "ti-odd:{n}"),
        }
    }
}
