//! Simple graphs on vertices `1..=n`, vertex-set algebra and peak sets of labelings.
//!
//! Vertices are 1-based everywhere in the public API. Internally a [`VertexSet`]
//! is a 64-bit mask with bit `v - 1` standing for vertex `v`, which caps graphs at
//! [`MAX_VERTICES`] vertices. Subgraphs obtained by deleting vertices are never
//! materialized; operations that need them take an `active` mask instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("{0} vertices requested, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("labeling is not a bijection onto 1..={0}")]
    NotBijective(usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
}

/// A set of 1-based vertices backed by a 64-bit mask.
///
/// Iteration is always in ascending vertex order. The `Ord` impl sorts by
/// cardinality first and then lexicographically by members, so `∅` comes first
/// and `{1,3}` comes before `{2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(v);
        s
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, v: usize) {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        if (1..=MAX_VERTICES).contains(&v) {
            self.0 &= !(1u64 << (v - 1));
        }
    }

    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement within `{1, ..., n}`.
    pub fn complement(self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Removes and returns the smallest member.
    pub fn pop_min(&mut self) -> Option<usize> {
        let v = self.first()?;
        self.0 &= self.0 - 1;
        Some(v)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Members as a vector in ascending order.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Maps every member through `f`.
    pub fn map(self, mut f: impl FnMut(usize) -> usize) -> Self {
        self.iter().map(&mut f).collect()
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const K: usize> From<[usize; K]> for VertexSet {
    fn from(vs: [usize; K]) -> Self {
        vs.into_iter().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Iterator over the subsets of a mask (standard `(x - mask) & mask` walk).
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(VertexSet(cur))
    }
}

/// Immutable simple graph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are rejected rather than merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u - 1].contains(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u - 1].insert(v);
            adj[v - 1].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `N(v)`. Panics if `v` is not a vertex.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Degree of `v` in the subgraph induced on `active`.
    pub fn degree_within(&self, v: usize, active: VertexSet) -> usize {
        (self.adj[v - 1] & active).len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (1..=self.n).contains(&u) && self.adj[u - 1].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in self.adj[u - 1].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        (1..=self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `N(S)`: union of the neighborhoods of the members of `s`.
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .filter(|&v| v <= self.n)
            .fold(VertexSet::EMPTY, |acc, v| acc | self.adj[v - 1])
    }

    /// `N(S)` inside the subgraph induced on `active`.
    pub fn neighborhood_within(&self, s: VertexSet, active: VertexSet) -> VertexSet {
        self.neighborhood(s & active) & active
    }

    /// Vertices of `active` whose degree inside `active` is below 2.
    pub fn low_degree_vertices(&self, active: VertexSet) -> VertexSet {
        active
            .iter()
            .filter(|&v| self.degree_within(v, active) < 2)
            .collect()
    }

    /// True iff no two members of `s` are adjacent.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.is_disjoint(self.neighborhood(s))
    }

    /// Vertices of degree at least 2 whose label beats every neighbor's label.
    pub fn peak_set(&self, labeling: &Labeling) -> VertexSet {
        debug_assert_eq!(labeling.len(), self.n);
        let labels = labeling.labels();
        (1..=self.n)
            .filter(|&v| {
                let nb = self.adj[v - 1];
                let own = labels[v - 1];
                nb.len() >= 2 && nb.iter().all(|u| labels[u - 1] < own)
            })
            .collect()
    }

    /// `self ∨ other`: `other`'s vertices are renumbered to follow `self`'s,
    /// and every cross pair is joined.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let offset = self.n;
        let mut edges = self.edges();
        edges.extend(
            other
                .edges()
                .into_iter()
                .map(|(u, v)| (u + offset, v + offset)),
        );
        for u in 1..=self.n {
            for v in 1..=other.n {
                edges.push((u, v + offset));
            }
        }
        Graph::new(self.n + other.n, &edges)
    }

    /// Disjoint union with `other`'s vertices numbered after `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let offset = self.n;
        let mut edges = self.edges();
        edges.extend(
            other
                .edges()
                .into_iter()
                .map(|(u, v)| (u + offset, v + offset)),
        );
        Graph::new(self.n + other.n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// `build_graph` in free-function form.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    Graph::new(n, edges)
}

pub fn neighborhood(g: &Graph, s: VertexSet) -> VertexSet {
    g.neighborhood(s)
}

pub fn low_degree_vertices(g: &Graph, active: VertexSet) -> VertexSet {
    g.low_degree_vertices(active)
}

pub fn is_independent(g: &Graph, s: VertexSet) -> bool {
    g.is_independent(s)
}

pub fn peak_set(g: &Graph, labeling: &Labeling) -> VertexSet {
    g.peak_set(labeling)
}

/// A bijection from vertices `1..=n` onto labels `1..=n`.
///
/// In one-line notation the labeling is the permutation `π` with `π_i` equal
/// to the label of vertex `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(Vec<u8>);

impl Labeling {
    /// `labels[i]` is the label of vertex `i + 1`.
    pub fn new(labels: &[usize]) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut seen = vec![false; n];
        for &l in labels {
            if l == 0 || l > n || seen[l - 1] {
                return Err(GraphError::NotBijective(n));
            }
            seen[l - 1] = true;
        }
        Ok(Labeling(labels.iter().map(|&l| l as u8).collect()))
    }

    /// Parses compact one-line notation such as `"4312"` (single digits only).
    pub fn from_one_line(s: &str) -> Result<Self, GraphError> {
        let labels: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).unwrap_or(0))
            .collect();
        Self::new(&labels)
    }

    pub(crate) fn from_raw(labels: Vec<u8>) -> Self {
        Labeling(labels)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Label of vertex `v` (1-based).
    pub fn label(&self, v: usize) -> usize {
        self.0[v - 1] as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize).collect()
    }

    /// Vertex carrying label `label`.
    pub fn vertex_with_label(&self, label: usize) -> Option<usize> {
        self.0
            .iter()
            .position(|&l| l as usize == label)
            .map(|i| i + 1)
    }

    /// One-line notation: digits run together when `n < 10`, space separated otherwise.
    pub fn one_line(&self) -> String {
        if self.0.len() < 10 {
            self.0.iter().map(|l| char::from(b'0' + l)).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling({})", self.one_line())
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
