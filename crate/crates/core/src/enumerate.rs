//! Recursive construction of all labelings with a prescribed peak set.
//!
//! The search places labels from the top down. At each step the largest unused
//! label goes to a vertex chosen from `S ∪ (L \ N(S))`, where `S` holds the
//! required peaks that are still unlabeled and `L` holds the vertices that may
//! take the current maximum without turning into a required peak (initially the
//! vertices of degree below 2). The chosen vertex is deleted, its neighbors join
//! `L`, and the search recurses on the remaining vertices.
//!
//! Given a starting pair `(S, L)` with `V_{<2}(G) ⊆ L`, the output is exactly the
//! set of labelings whose peak set `S'` satisfies `S ⊆ S' ⊆ S ∪ (L \ N(S))`. With
//! the default `L = V_{<2}(G)` this is the set of labelings with peak set exactly
//! `S`.
//!
//! The number of completions from a state depends only on `(remaining, S, L)`,
//! since the labels still to be placed are always `1..=|remaining|`. That triple
//! is the memo key used by [`CountCache`].

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, Labeling, VertexSet};

/// Default vertex bound for [`admissible_sets`].
pub const DEFAULT_ADMISSIBLE_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("peak set {peaks} is not contained in 1..={n}")]
    PeaksOutOfRange { peaks: VertexSet, n: usize },
    #[error("free set {free} is not contained in 1..={n}")]
    FreeOutOfRange { free: VertexSet, n: usize },
    #[error("free set must contain every vertex of degree < 2; missing {0}")]
    FreeMissingLowDegree(VertexSet),
    #[error("vertex {0} is not a legal choice from this state")]
    IllegalChoice(usize),
    #[error("state sets are inconsistent: {0}")]
    InvalidState(&'static str),
    #[error("graph has {n} vertices, above the bound of {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("count cache was populated for a different graph")]
    CacheGraphMismatch,
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

/// Memo key: `(remaining, S, L)` as raw bit masks.
pub type StateKey = (u64, u64, u64);

/// One node of the search tree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SearchState {
    remaining: VertexSet,
    required: VertexSet,
    free: VertexSet,
}

impl SearchState {
    /// Starting state for `peaks` on `g`.
    ///
    /// Returns `Ok(None)` when `peaks` cannot be a peak set at all (two members
    /// adjacent, or a member of degree below 2); the labeling set is then empty.
    pub fn initial(
        g: &Graph,
        peaks: VertexSet,
        free_override: Option<VertexSet>,
    ) -> Result<Option<Self>, EnumerateError> {
        let all = g.vertices();
        if !peaks.is_subset(all) {
            return Err(EnumerateError::PeaksOutOfRange { peaks, n: g.n() });
        }
        let low = g.low_degree_vertices(all);
        let free = match free_override {
            Some(free) => {
                if !free.is_subset(all) {
                    return Err(EnumerateError::FreeOutOfRange { free, n: g.n() });
                }
                if !low.is_subset(free) {
                    return Err(EnumerateError::FreeMissingLowDegree(low - free));
                }
                free
            }
            None => low,
        };
        if !g.is_independent(peaks) || !peaks.is_disjoint(low) {
            return Ok(None);
        }
        Ok(Some(SearchState {
            remaining: all,
            required: peaks,
            free: free - peaks,
        }))
    }

    /// Builds an arbitrary state. Members of `required` are dropped from `free`.
    pub fn from_parts(
        remaining: VertexSet,
        required: VertexSet,
        free: VertexSet,
    ) -> Result<Self, EnumerateError> {
        if !required.is_subset(remaining) {
            return Err(EnumerateError::InvalidState(
                "S must be a subset of the remaining vertices",
            ));
        }
        if !free.is_subset(remaining) {
            return Err(EnumerateError::InvalidState(
                "L must be a subset of the remaining vertices",
            ));
        }
        Ok(SearchState {
            remaining,
            required,
            free: free - required,
        })
    }

    pub fn remaining(&self) -> VertexSet {
        self.remaining
    }

    pub fn required(&self) -> VertexSet {
        self.required
    }

    pub fn free(&self) -> VertexSet {
        self.free
    }

    /// The label the next chosen vertex receives.
    pub fn next_label(&self) -> usize {
        self.remaining.len()
    }

    pub fn is_complete(&self) -> bool {
        self.remaining.is_empty()
    }

    pub fn key(&self) -> StateKey {
        (
            self.remaining.bits(),
            self.required.bits(),
            self.free.bits(),
        )
    }

    /// `S ∪ (L \ N(S))` with neighborhoods taken inside the remaining vertices.
    pub fn branch_choices(&self, g: &Graph) -> VertexSet {
        self.required | (self.free - g.neighborhood_within(self.required, self.remaining))
    }

    /// Labels `v` with [`next_label`](Self::next_label) and deletes it.
    pub fn apply_choice(&self, g: &Graph, v: usize) -> Result<SearchState, EnumerateError> {
        if !self.branch_choices(g).contains(v) {
            return Err(EnumerateError::IllegalChoice(v));
        }
        Ok(self.child(g, v))
    }

    fn child(&self, g: &Graph, v: usize) -> SearchState {
        let remaining = self.remaining.without(v);
        let required = self.required.without(v);
        let free = ((self.free | g.neighbors(v)) & remaining) - required;
        let next = SearchState {
            remaining,
            required,
            free,
        };
        debug_assert!(
            g.low_degree_vertices(remaining).is_subset(free | required),
            "low-degree vertex escaped L"
        );
        debug_assert!(
            required.iter().all(|s| g.degree_within(s, remaining) >= 2),
            "required peak lost a neighbor"
        );
        next
    }
}

pub fn branch_choices(g: &Graph, state: &SearchState) -> VertexSet {
    state.branch_choices(g)
}

pub fn apply_choice(
    g: &Graph,
    state: &SearchState,
    v: usize,
) -> Result<SearchState, EnumerateError> {
    state.apply_choice(g, v)
}

struct Frame {
    state: SearchState,
    pending: VertexSet,
}

/// Streaming enumerator over the labelings reachable from a state.
///
/// Uses an explicit stack, so memory stays `O(n)` no matter how many labelings
/// are produced. Output order follows ascending vertex choice at every level.
pub struct Labelings<'g> {
    graph: &'g Graph,
    stack: Vec<Frame>,
    labels: Vec<u8>,
}

impl<'g> Labelings<'g> {
    fn empty(graph: &'g Graph) -> Self {
        Labelings {
            graph,
            stack: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Continues from `state`, with `labels` holding the labels already placed
    /// (entries of remaining vertices are ignored).
    pub fn from_state(graph: &'g Graph, state: SearchState, labels: Vec<u8>) -> Self {
        assert_eq!(labels.len(), graph.n());
        Labelings {
            graph,
            stack: vec![Frame {
                state,
                pending: state.branch_choices(graph),
            }],
            labels,
        }
    }
}

impl Iterator for Labelings<'_> {
    type Item = Labeling;

    fn next(&mut self) -> Option<Labeling> {
        loop {
            let frame = self.stack.last_mut()?;
            let Some(v) = frame.pending.pop_min() else {
                self.stack.pop();
                continue;
            };
            self.labels[v - 1] = frame.state.next_label() as u8;
            let child = frame.state.child(self.graph, v);
            if child.is_complete() {
                return Some(Labeling::from_raw(self.labels.clone()));
            }
            let pending = child.branch_choices(self.graph);
            self.stack.push(Frame {
                state: child,
                pending,
            });
        }
    }
}

/// Streams `P(S, G, L)`; with no override `L = V_{<2}(G)` and the stream is `P(S; G)`.
pub fn enumerate_labelings(
    g: &Graph,
    peaks: VertexSet,
    free_override: Option<VertexSet>,
) -> Result<Labelings<'_>, EnumerateError> {
    Ok(match SearchState::initial(g, peaks, free_override)? {
        Some(state) => Labelings::from_state(g, state, vec![0; g.n()]),
        None => Labelings::empty(g),
    })
}

/// A finite slice of an enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBatch {
    pub labelings: Vec<Labeling>,
    /// True when more labelings exist beyond `labelings`.
    pub truncated: bool,
}

impl EnumerationBatch {
    fn from_prefix(mut labelings: Vec<Labeling>, limit: Option<usize>) -> Self {
        let truncated = limit.is_some_and(|l| labelings.len() > l);
        if let Some(l) = limit {
            labelings.truncate(l);
        }
        EnumerationBatch {
            labelings,
            truncated,
        }
    }
}

fn take_limited(it: Labelings<'_>, limit: Option<usize>) -> Vec<Labeling> {
    match limit {
        Some(l) => it.take(l.saturating_add(1)).collect(),
        None => it.collect(),
    }
}

/// Collects up to `limit` labelings, splitting the search tree across
/// `threads` workers. The result is identical to the sequential stream.
pub fn enumerate_labelings_par(
    g: &Graph,
    peaks: VertexSet,
    free_override: Option<VertexSet>,
    threads: usize,
    limit: Option<usize>,
) -> Result<EnumerationBatch, EnumerateError> {
    let Some(state) = SearchState::initial(g, peaks, free_override)? else {
        return Ok(EnumerationBatch::from_prefix(Vec::new(), limit));
    };
    if threads <= 1 {
        let it = Labelings::from_state(g, state, vec![0; g.n()]);
        return Ok(EnumerationBatch::from_prefix(
            take_limited(it, limit),
            limit,
        ));
    }
    let frontier = expand_frontier(g, state, vec![0; g.n()], threads * 4);
    let parts: Vec<Vec<Labeling>> = with_pool(threads, || {
        frontier
            .into_par_iter()
            .map(|(st, labels)| {
                if st.is_complete() {
                    vec![Labeling::from_raw(labels)]
                } else {
                    take_limited(Labelings::from_state(g, st, labels), limit)
                }
            })
            .collect()
    })?;
    let mut all = Vec::new();
    for part in parts {
        all.extend(part);
        if limit.is_some_and(|l| all.len() > l) {
            break;
        }
    }
    Ok(EnumerationBatch::from_prefix(all, limit))
}

/// Breadth-first expansion that keeps the depth-first output order: children
/// of each node are listed in ascending choice order, and every node of a
/// level sits at the same depth.
fn expand_frontier(
    g: &Graph,
    root: SearchState,
    labels: Vec<u8>,
    target: usize,
) -> Vec<(SearchState, Vec<u8>)> {
    let mut frontier = vec![(root, labels)];
    while frontier.len() < target && frontier.iter().any(|(s, _)| !s.is_complete()) {
        let mut next = Vec::new();
        for (st, labels) in frontier {
            if st.is_complete() {
                next.push((st, labels));
                continue;
            }
            for v in st.branch_choices(g) {
                let mut l = labels.clone();
                l[v - 1] = st.next_label() as u8;
                next.push((st.child(g, v), l));
            }
        }
        if next.is_empty() {
            return next;
        }
        frontier = next;
    }
    frontier
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, EnumerateError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| EnumerateError::ThreadPool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Memo table from search states to completion counts.
///
/// A cache is bound to the first graph it is used with; using it with a
/// different graph is an error. Safe to share between workers. With an entry
/// cap, inserts stop once the cap is reached and lookups keep working.
#[derive(Debug, Default)]
pub struct CountCache {
    map: DashMap<StateKey, BigUint>,
    entries: AtomicUsize,
    cap: Option<usize>,
    graph: OnceLock<Graph>,
}

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_entry_cap(cap: usize) -> Self {
        CountCache {
            cap: Some(cap),
            ..Self::default()
        }
    }

    pub fn len(&self) -> usize {
        self.entries.load(Ordering::Relaxed)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &StateKey) -> Option<BigUint> {
        self.map.get(key).map(|v| v.clone())
    }

    /// Returns false when the entry cap blocked the insert.
    pub fn insert(&self, key: StateKey, value: BigUint) -> bool {
        if let Some(cap) = self.cap {
            if self.entries.fetch_add(1, Ordering::Relaxed) >= cap {
                self.entries.fetch_sub(1, Ordering::Relaxed);
                return false;
            }
            if self.map.insert(key, value).is_some() {
                self.entries.fetch_sub(1, Ordering::Relaxed);
            }
        } else if self.map.insert(key, value).is_none() {
            self.entries.fetch_add(1, Ordering::Relaxed);
        }
        true
    }

    fn bind(&self, g: &Graph) -> Result<(), EnumerateError> {
        if self.graph.get_or_init(|| g.clone()) == g {
            Ok(())
        } else {
            Err(EnumerateError::CacheGraphMismatch)
        }
    }
}

/// Number of completions from `state`.
pub fn count_from_state(g: &Graph, state: &SearchState, cache: Option<&CountCache>) -> BigUint {
    if state.is_complete() {
        return BigUint::one();
    }
    let choices = state.branch_choices(g);
    if state.remaining.len() == 1 {
        return if choices.is_empty() {
            BigUint::zero()
        } else {
            BigUint::one()
        };
    }
    let key = state.key();
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        return hit;
    }
    let total = choices.iter().fold(BigUint::zero(), |acc, v| {
        acc + count_from_state(g, &state.child(g, v), cache)
    });
    if let Some(c) = cache {
        c.insert(key, total.clone());
    }
    total
}

/// `|P(S, G, L)|`, memoized through `cache` when one is given.
pub fn count_labelings(
    g: &Graph,
    peaks: VertexSet,
    free_override: Option<VertexSet>,
    cache: Option<&CountCache>,
) -> Result<BigUint, EnumerateError> {
    count_labelings_par(g, peaks, free_override, cache, 1)
}

/// [`count_labelings`] with the search tree split across `threads` workers.
pub fn count_labelings_par(
    g: &Graph,
    peaks: VertexSet,
    free_override: Option<VertexSet>,
    cache: Option<&CountCache>,
    threads: usize,
) -> Result<BigUint, EnumerateError> {
    if let Some(c) = cache {
        c.bind(g)?;
    }
    let Some(state) = SearchState::initial(g, peaks, free_override)? else {
        return Ok(BigUint::zero());
    };
    if threads <= 1 {
        return Ok(count_from_state(g, &state, cache));
    }
    let frontier = expand_frontier(g, state, vec![0; g.n()], threads * 4);
    with_pool(threads, || {
        frontier
            .par_iter()
            .map(|(st, _)| count_from_state(g, st, cache))
            .reduce(BigUint::zero, |a, b| a + b)
    })
}

/// True iff some labeling has peak set exactly `peaks`. Stops at the first one found.
pub fn is_admissible(g: &Graph, peaks: VertexSet) -> Result<bool, EnumerateError> {
    Ok(enumerate_labelings(g, peaks, None)?.next().is_some())
}

/// Independent subsets of `candidates`, in no particular order.
fn independent_subsets(g: &Graph, candidates: VertexSet) -> Vec<VertexSet> {
    fn rec(g: &Graph, mut candidates: VertexSet, current: VertexSet, out: &mut Vec<VertexSet>) {
        out.push(current);
        while let Some(v) = candidates.pop_min() {
            rec(g, candidates - g.neighbors(v), current.with(v), out);
        }
    }
    let mut out = Vec::new();
    rec(g, candidates, VertexSet::EMPTY, &mut out);
    out
}

/// Every admissible peak set with its count, sorted by size then members.
/// The counts sum to `n!`.
pub fn admissible_sets(
    g: &Graph,
    bound: Option<usize>,
) -> Result<Vec<(VertexSet, BigUint)>, EnumerateError> {
    admissible_sets_par(g, bound, 1)
}

pub fn admissible_sets_par(
    g: &Graph,
    bound: Option<usize>,
    threads: usize,
) -> Result<Vec<(VertexSet, BigUint)>, EnumerateError> {
    let bound = bound.unwrap_or(DEFAULT_ADMISSIBLE_BOUND);
    if g.n() > bound {
        return Err(EnumerateError::TooLarge { n: g.n(), bound });
    }
    let all = g.vertices();
    let mut candidates = independent_subsets(g, all - g.low_degree_vertices(all));
    candidates.sort();
    let cache = CountCache::new();
    let count = |s: &VertexSet| count_labelings(g, *s, None, Some(&cache)).map(|c| (*s, c));
    let counted: Vec<(VertexSet, BigUint)> = if threads <= 1 {
        candidates.iter().map(count).collect::<Result<_, _>>()?
    } else {
        with_pool(threads, || {
            candidates
                .par_iter()
                .map(count)
                .collect::<Result<Vec<_>, _>>()
        })??
    };
    Ok(counted.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}
