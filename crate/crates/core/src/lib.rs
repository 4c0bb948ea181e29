//! Labelings of graphs with a prescribed peak set.
//!
//! A labeling of a graph `G` on `n` vertices is a bijection onto `1..=n`. A
//! vertex of degree at least 2 is a *peak* when its label beats all of its
//! neighbors' labels; `P(S; G)` is the set of labelings whose peaks are exactly
//! `S`. This crate
//!
//! * enumerates `P(S; G)` by a top-down recursive construction ([`enumerate`]),
//!   and counts it exactly with memoization over search states,
//! * provides a brute-force oracle over all `n!` labelings ([`oracle`]),
//! * evaluates closed forms for cycles, path peak polynomials, joins and named
//!   graph families ([`formulas`]),
//! * reads and writes a small edge-list format and result output ([`graphio`]).
//!
//! ```
//! use peakset::{enumerate::count_labelings, family::Family, graph::VertexSet};
//!
//! let c5 = Family::Cycle(5).build().unwrap();
//! let count = count_labelings(&c5, VertexSet::from([1, 3]), None, None).unwrap();
//! assert_eq!(count, 16u32.into());
//! ```

pub mod corpus;
pub mod enumerate;
pub mod family;
pub mod formulas;
pub mod graph;
pub mod graphio;
pub mod oracle;

pub use enumerate::{count_labelings, enumerate_labelings, CountCache, SearchState};
pub use family::Family;
pub use graph::{Graph, GraphError, Labeling, VertexSet};
