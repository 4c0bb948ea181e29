use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use peakset::enumerate::{count_labelings, enumerate_labelings, CountCache};
use peakset::graph::{build_graph, Graph, Labeling, VertexSet};
use peakset::graphio::{parse_document, render_results, Format, GraphDocument, Payload};

/// Peak-set histogram by plain permutation recursion, independent of the crate's oracle.
fn reference_counts(g: &Graph) -> BTreeMap<u64, u64> {
    fn go(g: &Graph, labels: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut BTreeMap<u64, u64>) {
        let n = g.n();
        if labels.len() == n {
            let mut peaks = 0u64;
            for v in 1..=n {
                let nbrs: Vec<usize> = g.neighbors(v).iter().collect();
                if nbrs.len() >= 2 && nbrs.iter().all(|&u| labels[u - 1] < labels[v - 1]) {
                    peaks |= 1 << (v - 1);
                }
            }
            *out.entry(peaks).or_default() += 1;
            return;
        }
        for label in 1..=n {
            if !used[label] {
                used[label] = true;
                labels.push(label);
                go(g, labels, used, out);
                labels.pop();
                used[label] = false;
            }
        }
    }
    let mut out = BTreeMap::new();
    go(g, &mut Vec::new(), &mut vec![false; g.n() + 1], &mut out);
    out
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, k)| **k)
                .map(|(e, _)| *e)
                .collect();
            build_graph(n, &edges).unwrap()
        })
    })
}

fn path(n: usize) -> Graph {
    build_graph(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_match_reference(g in arb_graph(6)) {
        let reference = reference_counts(&g);
        let cache = CountCache::new();
        for s in g.vertices().subsets() {
            let expected = reference.get(&s.bits()).copied().unwrap_or(0);
            prop_assert_eq!(count_labelings(&g, s, None, Some(&cache)).unwrap(), BigUint::from(expected));
            prop_assert_eq!(count_labelings(&g, s, None, None).unwrap(), BigUint::from(expected));
        }
    }

    #[test]
    fn enumerated_labelings_have_the_requested_peaks(g in arb_graph(6), bits in any::<u64>()) {
        let s = VertexSet::from_bits(bits) & g.vertices();
        let all: Vec<Labeling> = enumerate_labelings(&g, s, None).unwrap().collect();
        for l in &all {
            prop_assert_eq!(g.peak_set(l), s);
        }
        let mut distinct: Vec<_> = all.iter().map(|l| l.to_vec()).collect();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn realized_peak_sets_are_independent_of_degree_two(
        (g, labels) in arb_graph(6).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let n = g.n();
        let l = Labeling::new(&labels).unwrap();
        let peaks = g.peak_set(&l);
        prop_assert!(g.is_independent(peaks));
        prop_assert!(peaks.iter().all(|v| g.degree(v) >= 2));
        let top = l.vertex_with_label(n).unwrap();
        prop_assert_eq!(peaks.contains(top), g.degree(top) >= 2);
    }

    #[test]
    fn path_counts_are_reversal_invariant(n in 3usize..=12, bits in any::<u64>()) {
        let g = path(n);
        let s = VertexSet::from_bits(bits) & g.vertices();
        let mirrored = s.map(|v| n + 1 - v);
        let cache = CountCache::new();
        prop_assert_eq!(
            count_labelings(&g, s, None, Some(&cache)).unwrap(),
            count_labelings(&g, mirrored, None, Some(&cache)).unwrap()
        );
    }

    #[test]
    fn join_edge_count(a in arb_graph(5), b in arb_graph(5)) {
        let j = a.join(&b).unwrap();
        prop_assert_eq!(j.n(), a.n() + b.n());
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.n() * b.n());
    }

    #[test]
    fn graph_text_round_trips(g in arb_graph(9)) {
        let text = GraphDocument::from_graph(&g, Some("sample".into())).render();
        let doc = parse_document(&text).unwrap();
        prop_assert_eq!(doc.name.as_deref(), Some("sample"));
        prop_assert_eq!(doc.to_graph().unwrap(), g);
    }

    #[test]
    fn json_rendering_is_stable(g in arb_graph(7), bits in any::<u64>()) {
        let s = VertexSet::from_bits(bits) & g.vertices();
        let count = count_labelings(&g, s, None, None).unwrap();
        let first = render_results(&Payload::Count { graph: &g, peaks: s, count: &count }, Format::Json);
        let again = render_results(&Payload::Count { graph: &g, peaks: s, count: &count }, Format::Json);
        prop_assert_eq!(&first, &again);
        let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
        prop_assert_eq!(parsed["count"].as_str().unwrap(), count.to_string());
    }
}

#[test]
fn shared_cache_across_peak_sets_is_sound() {
    let g = build_graph(
        7,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 1),
            (1, 4),
            (2, 6),
        ],
    )
    .unwrap();
    let reference = reference_counts(&g);
    let shared = CountCache::new();
    for s in g.vertices().subsets() {
        let expected = BigUint::from(reference.get(&s.bits()).copied().unwrap_or(0));
        assert_eq!(
            count_labelings(&g, s, None, Some(&shared)).unwrap(),
            expected,
            "S={s}"
        );
    }
    assert!(!shared.is_empty());
}

#[test]
fn capped_cache_still_counts_exactly() {
    let g = path(14);
    let s: VertexSet = [2usize, 6, 10].into();
    let capped = CountCache::with_entry_cap(8);
    let exact = count_labelings(&g, s, None, Some(&CountCache::new())).unwrap();
    assert_eq!(count_labelings(&g, s, None, Some(&capped)).unwrap(), exact);
    assert!(capped.len() <= 8);
}

#[test]
fn cache_refuses_a_second_graph() {
    let cache = CountCache::new();
    count_labelings(&path(5), VertexSet::EMPTY, None, Some(&cache)).unwrap();
    assert!(count_labelings(&path(6), VertexSet::EMPTY, None, Some(&cache)).is_err());
}
