//! Brute-force ground truth: walk all `n!` labelings and read off peak sets
//! straight from the definition.
//!
//! Nothing in here knows about the recursive search except [`cross_validate`],
//! which compares the two.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{self, CountCache, EnumerateError};
use crate::graph::{Graph, Labeling, VertexSet};

/// Largest `n` scanned unless the caller raises it.
pub const DEFAULT_ORACLE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("peak set {peaks} is not contained in 1..={n}")]
    PeaksOutOfRange { peaks: VertexSet, n: usize },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

fn check_limit(g: &Graph, limit: Option<usize>) -> Result<(), OracleError> {
    let limit = limit.unwrap_or(DEFAULT_ORACLE_LIMIT);
    if g.n() > limit {
        Err(OracleError::TooLarge { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Lexicographic successor in place; false once `perm` is the last permutation.
fn next_permutation(perm: &mut [u8]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm
        .iter()
        .rposition(|&x| x > perm[i])
        .expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Calls `visit` on every permutation of `1..=n` whose first entry is `first`,
/// in lexicographic order.
fn scan_block(n: usize, first: u8, mut visit: impl FnMut(&[u8])) {
    let mut perm: Vec<u8> = std::iter::once(first)
        .chain((1..=n as u8).filter(|&x| x != first))
        .collect();
    loop {
        visit(&perm);
        if !next_permutation(&mut perm[1..]) {
            break;
        }
    }
}

/// Runs `scan_block` for every first entry, possibly in parallel, and returns
/// the per-block results in block order.
fn scan_blocks<T: Send>(
    n: usize,
    threads: usize,
    block: impl Fn(u8) -> T + Sync + Send,
) -> Result<Vec<T>, OracleError> {
    let firsts: Vec<u8> = (1..=n as u8).collect();
    if threads <= 1 {
        return Ok(firsts.into_iter().map(block).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| OracleError::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| firsts.into_par_iter().map(block).collect()))
}

/// All labelings with peak set exactly `peaks`, in lexicographic order.
pub fn brute_force_labelings(
    g: &Graph,
    peaks: VertexSet,
    limit: Option<usize>,
) -> Result<Vec<Labeling>, OracleError> {
    check_limit(g, limit)?;
    if !peaks.is_subset(g.vertices()) {
        return Err(OracleError::PeaksOutOfRange { peaks, n: g.n() });
    }
    let blocks = scan_blocks(g.n(), 1, |first| {
        let mut out = Vec::new();
        scan_block(g.n(), first, |perm| {
            let lab = Labeling::from_raw(perm.to_vec());
            if g.peak_set(&lab) == peaks {
                out.push(lab);
            }
        });
        out
    })?;
    Ok(blocks.into_iter().flatten().collect())
}

/// Every labeling grouped by its peak set.
pub fn labelings_by_peak_set(
    g: &Graph,
    limit: Option<usize>,
) -> Result<BTreeMap<VertexSet, Vec<Labeling>>, OracleError> {
    check_limit(g, limit)?;
    let mut groups: BTreeMap<VertexSet, Vec<Labeling>> = BTreeMap::new();
    for first in 1..=g.n() as u8 {
        scan_block(g.n(), first, |perm| {
            let lab = Labeling::from_raw(perm.to_vec());
            groups.entry(g.peak_set(&lab)).or_default().push(lab);
        });
    }
    Ok(groups)
}

/// Count of labelings per realized peak set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PeakDistribution {
    counts: BTreeMap<VertexSet, BigUint>,
}

impl PeakDistribution {
    /// Count for `peaks`; zero when the set never occurs.
    pub fn get(&self, peaks: VertexSet) -> BigUint {
        self.counts.get(&peaks).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Entries sorted by peak-set size, then members.
    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, &BigUint)> {
        self.counts.iter().map(|(k, v)| (*k, v))
    }
}

impl FromIterator<(VertexSet, BigUint)> for PeakDistribution {
    fn from_iter<I: IntoIterator<Item = (VertexSet, BigUint)>>(iter: I) -> Self {
        let mut counts: BTreeMap<VertexSet, BigUint> = BTreeMap::new();
        for (k, v) in iter {
            *counts.entry(k).or_default() += v;
        }
        PeakDistribution { counts }
    }
}

pub fn peak_distribution(g: &Graph, limit: Option<usize>) -> Result<PeakDistribution, OracleError> {
    peak_distribution_par(g, limit, 1)
}

/// [`peak_distribution`] with permutation blocks (fixed first entry) scanned by
/// `threads` workers and merged by summation.
pub fn peak_distribution_par(
    g: &Graph,
    limit: Option<usize>,
    threads: usize,
) -> Result<PeakDistribution, OracleError> {
    check_limit(g, limit)?;
    let blocks = scan_blocks(g.n(), threads, |first| {
        let mut local: BTreeMap<VertexSet, u64> = BTreeMap::new();
        scan_block(g.n(), first, |perm| {
            let lab = Labeling::from_raw(perm.to_vec());
            *local.entry(g.peak_set(&lab)).or_default() += 1;
        });
        local
    })?;
    Ok(blocks
        .into_iter()
        .flatten()
        .map(|(k, v)| (k, BigUint::from(v)))
        .collect())
}

/// Disagreement between the recursive search and brute force for one peak set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub peaks: Vec<usize>,
    pub oracle: String,
    pub enumerated: String,
    pub counted: String,
    pub counted_memo: String,
    /// True when the enumerated labelings differ from the oracle's as sets (or
    /// contain repeats), even if the sizes agree.
    pub set_differs: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub subsets_checked: usize,
    pub admissible_sets: usize,
    pub labelings: String,
    pub mismatches: Vec<Mismatch>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares enumeration and counting (with and without memo) against brute
/// force for every `S ⊆ V(G)`. With `threads > 1` the subsets are checked
/// concurrently; the report is the same either way.
pub fn cross_validate(
    g: &Graph,
    limit: Option<usize>,
    threads: usize,
) -> Result<ValidationReport, OracleError> {
    let truth = labelings_by_peak_set(g, limit)?;
    let cache = CountCache::new();
    let subsets: Vec<VertexSet> = g.vertices().subsets().collect();
    let check = |s: &VertexSet| check_subset(g, *s, &truth, &cache);
    let results: Vec<Option<Mismatch>> = if threads <= 1 {
        subsets.iter().map(check).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| OracleError::ThreadPool(e.to_string()))?;
        pool.install(|| subsets.par_iter().map(check).collect::<Result<_, _>>())?
    };
    let total: BigUint = truth.values().map(|v| BigUint::from(v.len())).sum();
    Ok(ValidationReport {
        n: g.n(),
        subsets_checked: subsets.len(),
        admissible_sets: truth.len(),
        labelings: total.to_string(),
        mismatches: results.into_iter().flatten().collect(),
    })
}

fn check_subset(
    g: &Graph,
    s: VertexSet,
    truth: &BTreeMap<VertexSet, Vec<Labeling>>,
    cache: &CountCache,
) -> Result<Option<Mismatch>, OracleError> {
    let expected: &[Labeling] = truth.get(&s).map(Vec::as_slice).unwrap_or(&[]);
    let mut enumerated: Vec<Labeling> = enumerate::enumerate_labelings(g, s, None)?.collect();
    let enumerated_len = enumerated.len();
    enumerated.sort();
    let set_differs = enumerated != expected;
    let counted = enumerate::count_labelings(g, s, None, None)?;
    let counted_memo = enumerate::count_labelings(g, s, None, Some(cache))?;
    let oracle = BigUint::from(expected.len());
    if !set_differs && counted == oracle && counted_memo == oracle {
        return Ok(None);
    }
    Ok(Some(Mismatch {
        peaks: s.to_vec(),
        oracle: oracle.to_string(),
        enumerated: enumerated_len.to_string(),
        counted: counted.to_string(),
        counted_memo: counted_memo.to_string(),
        set_differs,
    }))
}
