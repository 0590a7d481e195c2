//! Exhaustive generation of free trees up to isomorphism and search drivers
//! over them.
//!
//! Trees are produced as canonical level sequences rooted at a center, using
//! the Wright-Richmond-Odlyzko-McKay successor rules on top of the
//! Beyer-Hedetniemi rooted-tree successor. A degree cap prunes whole blocks of
//! the successor order: once a prefix forces a vertex over the cap, every
//! sequence sharing that prefix is skipped in one step.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::graph6::tree_to_graph6;
use crate::structure::{edge_add_case_i, edge_add_case_ii};
use crate::transmission::{all_distinct, tree_transmissions_topological};

/// Largest order accepted unless the caller raises the limit.
pub const DEFAULT_MAX_ORDER: usize = 24;
pub const DEFAULT_WITNESS_CAP: usize = 100;
const CHUNK: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
    #[error("empty order range")]
    EmptyRange,
}

/// A canonical level sequence: `depths[i]` is the depth of the `i`-th vertex
/// of a preorder walk from the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelSequence(pub Vec<u8>);

impl LevelSequence {
    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Parent of each vertex in preorder labels; `parent[0] = 0`.
    pub fn parents(&self) -> Vec<VertexId> {
        let mut parent = Vec::with_capacity(self.0.len());
        parents_into(&self.0, &mut parent);
        parent
    }

    pub fn to_graph(&self) -> Graph {
        let parent = self.parents();
        Graph::from_edge_list(parent.len(), (1..parent.len()).map(|v| (parent[v], v)))
            .expect("a level sequence describes a tree")
    }

    /// graph6 of the tree labelled in preorder.
    pub fn to_graph6(&self) -> String {
        tree_to_graph6(&self.parents())
    }
}

fn parents_into(depths: &[u8], parent: &mut Vec<VertexId>) {
    parent.clear();
    let mut last = [0usize; 256];
    for (i, &d) in depths.iter().enumerate() {
        parent.push(if d == 0 { 0 } else { last[d as usize - 1] });
        last[d as usize] = i;
    }
}

/// Rooted-tree successor, changing position `p` and everything after it.
fn next_rooted(seq: &mut [u8], p: usize) -> bool {
    if p == 0 {
        return false;
    }
    let mut q = p - 1;
    while seq[q] != seq[p] - 1 {
        q -= 1;
    }
    for i in p..seq.len() {
        seq[i] = seq[i - p + q];
    }
    true
}

fn last_non_one(seq: &[u8]) -> usize {
    let mut p = seq.len() - 1;
    while seq[p] == 1 {
        p -= 1;
    }
    p
}

/// Index of the second depth-1 entry, i.e. the end of the first root subtree.
fn split_point(seq: &[u8]) -> usize {
    seq.iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &d)| d == 1)
        .map_or(seq.len(), |(i, _)| i)
}

/// Whether the first root subtree is no larger than the rest, as required
/// for the root to be the (first) center.
fn is_centered(seq: &[u8]) -> bool {
    let m = split_point(seq);
    let left = &seq[1..m];
    let rest = &seq[m..];
    let left_height = left.iter().max().map_or(0, |&h| h - 1);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    if rest_height < left_height {
        return false;
    }
    if rest_height == left_height {
        let rest_len = rest.len() + 1;
        if left.len() > rest_len {
            return false;
        }
        if left.len() == rest_len {
            // compare (left - 1) with (0, rest...)
            let l = left.iter().map(|&d| d - 1);
            let r = std::iter::once(0).chain(rest.iter().copied());
            if l.gt(r) {
                return false;
            }
        }
    }
    true
}

/// Jumps past every candidate that shares the current (too large) first
/// subtree.
fn skip_left(seq: &mut [u8]) -> bool {
    let p = split_point(seq) - 1;
    let tall = seq[p] > 2;
    if !next_rooted(seq, p) {
        return false;
    }
    if tall {
        let m = split_point(seq);
        let left_height = seq[1..m].iter().max().map_or(0, |&h| h - 1) as usize;
        let len = seq.len();
        for (offset, slot) in seq[len - left_height - 1..].iter_mut().enumerate() {
            *slot = offset as u8 + 1;
        }
    }
    true
}

/// First position at which the prefix forces a degree above `cap`.
fn cap_violation(seq: &[u8], cap: usize) -> Option<usize> {
    let mut last = [0usize; 256];
    let mut degree = [0usize; 256];
    for (i, &d) in seq.iter().enumerate() {
        if d > 0 {
            let parent = last[d as usize - 1];
            degree[parent] += 1;
            if degree[parent] > cap {
                return Some(i);
            }
            degree[i] = 1;
        }
        last[d as usize] = i;
    }
    None
}

/// Restartable stream of all free trees of a given order, each isomorphism
/// class exactly once, optionally with maximum degree at most `degree_cap`.
#[derive(Clone, Debug)]
pub struct TreeStream {
    order: usize,
    degree_cap: Option<usize>,
    /// Next unchecked candidate; `None` once exhausted.
    cursor: Option<Vec<u8>>,
}

impl TreeStream {
    fn new(order: usize, degree_cap: Option<usize>) -> Self {
        assert!(order < 256, "level sequences are limited to 255 vertices");
        let cursor = if order == 1 {
            vec![0]
        } else {
            (0..=order / 2)
                .chain(1..order.div_ceil(2))
                .map(|d| d as u8)
                .collect()
        };
        TreeStream {
            order,
            degree_cap,
            cursor: Some(cursor),
        }
    }

    /// Resumes from a cursor previously returned by [`TreeStream::cursor`].
    pub fn resume(order: usize, degree_cap: Option<usize>, cursor: Option<Vec<u8>>) -> Self {
        if let Some(c) = &cursor {
            assert_eq!(c.len(), order, "cursor length must equal the order");
        }
        TreeStream {
            order,
            degree_cap,
            cursor,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree_cap(&self) -> Option<usize> {
        self.degree_cap
    }

    /// Generator state; feed it to [`TreeStream::resume`] to continue.
    pub fn cursor(&self) -> Option<&[u8]> {
        self.cursor.as_deref()
    }

    /// Writes the next tree into `out` without allocating.
    pub fn next_into(&mut self, out: &mut Vec<u8>) -> bool {
        let Some(seq) = self.cursor.as_mut() else {
            return false;
        };
        if seq.len() <= 2 {
            let ok = self
                .degree_cap
                .is_none_or(|cap| cap_violation(seq, cap).is_none());
            out.clear();
            out.extend_from_slice(seq);
            self.cursor = None;
            return ok;
        }
        loop {
            while !is_centered(seq) {
                if !skip_left(seq) {
                    self.cursor = None;
                    return false;
                }
            }
            let violation = self.degree_cap.and_then(|cap| cap_violation(seq, cap));
            match violation {
                None => break,
                Some(j) => match (1..=j).rev().find(|&p| seq[p] > 1) {
                    Some(p) if next_rooted(seq, p) => {}
                    _ => {
                        self.cursor = None;
                        return false;
                    }
                },
            }
        }
        out.clear();
        out.extend_from_slice(seq);
        let p = last_non_one(seq);
        if !next_rooted(seq, p) {
            self.cursor = None;
        }
        true
    }
}

impl Iterator for TreeStream {
    type Item = LevelSequence;

    fn next(&mut self) -> Option<LevelSequence> {
        let mut out = Vec::with_capacity(self.order);
        self.next_into(&mut out).then_some(LevelSequence(out))
    }
}

fn check_order(n: usize, max_order: usize) -> Result<(), EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroOrder);
    }
    if n > max_order {
        return Err(EnumerateError::OrderTooLarge {
            order: n,
            max: max_order,
        });
    }
    Ok(())
}

/// All free trees of order `n` (at most [`DEFAULT_MAX_ORDER`]).
pub fn free_trees(n: usize, degree_cap: Option<usize>) -> Result<TreeStream, EnumerateError> {
    free_trees_with_limit(n, degree_cap, DEFAULT_MAX_ORDER)
}

pub fn free_trees_with_limit(
    n: usize,
    degree_cap: Option<usize>,
    max_order: usize,
) -> Result<TreeStream, EnumerateError> {
    check_order(n, max_order)?;
    Ok(TreeStream::new(n, degree_cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Atom {
    Ti,
    CaseI,
    CaseII,
    EvenOrder,
    OddOrder,
    Chemical,
}

impl Atom {
    fn name(self) -> &'static str {
        match self {
            Atom::Ti => "ti",
            Atom::CaseI => "case-i",
            Atom::CaseII => "case-ii",
            Atom::EvenOrder => "even-order",
            Atom::OddOrder => "odd-order",
            Atom::Chemical => "chemical",
        }
    }
}

/// A conjunction of named tree properties, e.g. `ti-and-case-i` or
/// `ti&chemical`. Atoms: `ti`, `case-i`, `case-ii`, `even-order`,
/// `odd-order`, `chemical`; `ti-even-order` is an alias for
/// `ti-and-even-order`. Transmission irregularity is always required, so
/// every match is a TI tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    atoms: BTreeSet<Atom>,
}

impl Predicate {
    pub fn ti() -> Self {
        Predicate {
            atoms: BTreeSet::from([Atom::Ti]),
        }
    }

    fn has(&self, atom: Atom) -> bool {
        self.atoms.contains(&atom)
    }

    /// Evaluates everything except TI, which the caller has already decided.
    fn matches_ti_tree(&self, parent: &[VertexId]) -> bool {
        let n = parent.len();
        if self.has(Atom::EvenOrder) && !n.is_multiple_of(2)
            || self.has(Atom::OddOrder) && n.is_multiple_of(2)
        {
            return false;
        }
        let needs_graph =
            self.has(Atom::Chemical) || self.has(Atom::CaseI) || self.has(Atom::CaseII);
        if !needs_graph {
            return true;
        }
        let g = Graph::from_edge_list(n, (1..n).map(|v| (parent[v], v))).expect("valid tree");
        if self.has(Atom::Chemical) && !g.is_chemical() {
            return false;
        }
        if self.has(Atom::CaseI) && !matches!(edge_add_case_i(&g), Ok(Some(_))) {
            return false;
        }
        if self.has(Atom::CaseII) && !matches!(edge_add_case_ii(&g), Ok(Some(_))) {
            return false;
        }
        true
    }
}

impl FromStr for Predicate {
    type Err = EnumerateError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let unknown = || EnumerateError::UnknownPredicate(text.to_string());
        let normalized = text.trim().replace("ti-even-order", "ti-and-even-order");
        let mut atoms = BTreeSet::from([Atom::Ti]);
        for token in normalized.split('&').flat_map(|t| t.split("-and-")) {
            let atom = match token.trim() {
                "ti" => Atom::Ti,
                "case-i" => Atom::CaseI,
                "case-ii" => Atom::CaseII,
                "even-order" => Atom::EvenOrder,
                "odd-order" => Atom::OddOrder,
                "chemical" => Atom::Chemical,
                _ => return Err(unknown()),
            };
            atoms.insert(atom);
        }
        Ok(Predicate { atoms })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.atoms.iter().map(|a| a.name()).collect();
        f.write_str(&names.join("-and-"))
    }
}

/// Counts for one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub order: usize,
    pub total_trees: u64,
    pub ti_count: u64,
    /// Trees satisfying the search predicate.
    pub matched: u64,
    /// graph6 of the smallest matching trees (by string order), capped.
    pub witnesses: Vec<String>,
    pub elapsed: Duration,
}

impl SearchReport {
    /// `order,total,ti_count,elapsed_ms`; without timing the last field is 0.
    pub fn line(&self, with_timing: bool) -> String {
        let ms = if with_timing {
            self.elapsed.as_millis()
        } else {
            0
        };
        format!(
            "{},{},{},{}",
            self.order, self.total_trees, self.ti_count, ms
        )
    }

    /// Equality ignoring the elapsed time.
    pub fn same_results(&self, other: &SearchReport) -> bool {
        SearchReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        } == SearchReport {
            elapsed: Duration::ZERO,
            ..other.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub degree_cap: Option<usize>,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub witness_cap: usize,
    pub max_order: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            degree_cap: None,
            jobs: None,
            witness_cap: DEFAULT_WITNESS_CAP,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Default)]
struct ChunkTally {
    ti: u64,
    matched: u64,
    witnesses: Vec<String>,
}

fn tally_chunk(chunk: &[Vec<u8>], predicate: &Predicate) -> ChunkTally {
    let mut tally = ChunkTally::default();
    let (mut parent, mut size, mut tr) = (Vec::new(), Vec::new(), Vec::new());
    for seq in chunk {
        // the one-vertex tree is irregular only trivially and is not counted
        if seq.len() < 2 {
            continue;
        }
        parents_into(seq, &mut parent);
        tree_transmissions_topological(&parent, &mut size, &mut tr);
        if !all_distinct(&tr) {
            continue;
        }
        tally.ti += 1;
        if predicate.matches_ti_tree(&parent) {
            tally.matched += 1;
            tally.witnesses.push(tree_to_graph6(&parent));
        }
    }
    tally
}

fn search_order(
    n: usize,
    predicate: &Predicate,
    options: &SearchOptions,
) -> Result<SearchReport, EnumerateError> {
    let start = Instant::now();
    let mut stream = free_trees_with_limit(n, options.degree_cap, options.max_order)?;
    let mut report = SearchReport {
        order: n,
        total_trees: 0,
        ti_count: 0,
        matched: 0,
        witnesses: Vec::new(),
        elapsed: Duration::ZERO,
    };
    let mut witnesses = BTreeSet::new();
    let mut buffer: Vec<Vec<u8>> = (0..CHUNK).map(|_| Vec::with_capacity(n)).collect();
    loop {
        let mut filled = 0;
        while filled < CHUNK && stream.next_into(&mut buffer[filled]) {
            filled += 1;
        }
        if filled == 0 {
            break;
        }
        report.total_trees += filled as u64;
        let tallies: Vec<ChunkTally> = buffer[..filled]
            .par_chunks(CHUNK.div_ceil(16))
            .map(|c| tally_chunk(c, predicate))
            .collect();
        for t in tallies {
            report.ti_count += t.ti;
            report.matched += t.matched;
            witnesses.extend(t.witnesses);
            while witnesses.len() > options.witness_cap {
                witnesses.pop_last();
            }
        }
        if filled < CHUNK {
            break;
        }
    }
    report.witnesses = witnesses.into_iter().collect();
    report.elapsed = start.elapsed();
    Ok(report)
}

/// One report per order in `range`. Results do not depend on `jobs`.
pub fn search(
    range: RangeInclusive<usize>,
    predicate: &Predicate,
    options: &SearchOptions,
) -> Result<Vec<SearchReport>, EnumerateError> {
    if range.is_empty() {
        return Err(EnumerateError::EmptyRange);
    }
    check_order(*range.start(), options.max_order)?;
    check_order(*range.end(), options.max_order)?;
    let run = || {
        range
            .clone()
            .map(|n| search_order(n, predicate, options))
            .collect()
    };
    match options.jobs {
        None => run(),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(run),
    }
}

/// TI tree count of order `n`; `chemical` caps the maximum degree at 4.
pub fn count_ti_trees(n: usize, chemical: bool) -> Result<SearchReport, EnumerateError> {
    let options = SearchOptions {
        degree_cap: chemical.then_some(4),
        ..SearchOptions::default()
    };
    search_order(n, &Predicate::ti(), &options)
}
