use num_bigint::BigUint;

use peakset::corpus::{standard_corpus, DEFAULT_SEED};
use peakset::formulas::{
    complete_join_count, cycle_count, family_count, null_join_count, path_peak_polynomial,
};
use peakset::oracle::{brute_force_labelings, cross_validate};
use peakset::{count_labelings, CountCache, Family, Graph, VertexSet};

fn graph(spec: &str) -> Graph {
    spec.parse::<Family>().unwrap().build().unwrap()
}

fn count(spec: &str, peaks: &[usize]) -> BigUint {
    let g = graph(spec);
    let s: VertexSet = peaks.iter().copied().collect();
    let memo = count_labelings(&g, s, None, Some(&CountCache::new())).unwrap();
    if g.n() <= 8 {
        let brute = brute_force_labelings(&g, s, None).unwrap().len();
        assert_eq!(memo, BigUint::from(brute), "{spec} {peaks:?}");
    }
    memo
}

#[test]
fn small_counts() {
    assert_eq!(count("path:4", &[2]), 8u32.into());
    assert_eq!(count("cycle:3", &[1]), 2u32.into());
    assert_eq!(count("cycle:4", &[1]), 4u32.into());
    assert_eq!(count("null:5", &[]), 120u32.into());
    assert_eq!(count("join:complete:2+path:3", &[1]), 24u32.into());
    assert_eq!(count("join:complete:2+cycle:3", &[1, 2]), 0u32.into());
    assert_eq!(count("fan:2,3", &[3]), 12u32.into());
}

#[test]
fn join_formulas_against_enumeration() {
    assert_eq!(
        null_join_count(3, 2, 1).unwrap(),
        count("complete_bipartite:3,2", &[1])
    );
    assert_eq!(
        null_join_count(3, 2, 1).unwrap(),
        count("join:null:3+path:2", &[1])
    );
    assert_eq!(null_join_count(4, 3, 1).unwrap(), count("fan:3,4", &[4]));
    assert_eq!(null_join_count(4, 3, 1).unwrap(), 360u32.into());
    assert_eq!(
        complete_join_count(1, 5, 1).unwrap(),
        count("wheel:5", &[1])
    );
}

#[test]
fn cycle_decomposition_example() {
    let s: VertexSet = [1usize, 3].into();
    assert_eq!(cycle_count(5, s).unwrap(), 16u32.into());
    assert_eq!(
        cycle_count(6, [1usize, 4].into()).unwrap(),
        count("cycle:6", &[1, 4])
    );
}

#[test]
fn polynomials_reproduce_large_path_counts() {
    let p = path_peak_polynomial([2usize].into()).unwrap();
    assert_eq!(p.to_string(), "x - 2");
    assert_eq!(p.path_count(20), Some(count("path:20", &[2])));
    let q = path_peak_polynomial([2usize, 5].into()).unwrap();
    assert_eq!(q.path_count(16), Some(count("path:16", &[2, 5])));
}

#[test]
fn table_rows() {
    let star: Family = "star:8".parse().unwrap();
    assert_eq!(
        family_count(&star, VertexSet::EMPTY).unwrap(),
        Some(35280u32.into())
    );
    assert_eq!(
        family_count(&star, [1usize].into()).unwrap(),
        Some(5040u32.into())
    );
    assert_eq!(
        family_count(&star, [2usize].into()).unwrap(),
        Some(0u32.into())
    );
    let windmill: Family = "windmill:2".parse().unwrap();
    assert_eq!(family_count(&windmill, [2usize].into()).unwrap(), None);
    assert_eq!(count("windmill:2", &[2]), 8u32.into());
}

#[test]
fn built_in_corpus_verifies() {
    for entry in standard_corpus(DEFAULT_SEED) {
        let report = cross_validate(&entry.graph, None, 2).unwrap();
        assert!(report.ok(), "{}: {:?}", entry.name, report.mismatches);
    }
}
