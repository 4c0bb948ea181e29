//! The small-graph corpus used by `verify` and the test suites.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::Family;
use crate::graph::Graph;

/// Seed for the random part of [`standard_corpus`].
pub const DEFAULT_SEED: u64 = 2016;

/// Number of random graphs in [`standard_corpus`].
pub const RANDOM_GRAPHS: usize = 20;

#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub name: String,
    pub family: Option<Family>,
    pub graph: Graph,
}

impl CorpusGraph {
    fn named(family: Family) -> Self {
        CorpusGraph {
            name: family.to_string(),
            graph: family.build().expect("corpus families are valid"),
            family: Some(family),
        }
    }
}

/// `G(n, 1/2)`: every pair joined independently with probability one half.
pub fn random_graph(rng: &mut impl RngExt, n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// Paths 2..=7, cycles 3..=7, complete 2..=6, null 1..=6, stars 3..=7,
/// wheels 3..=6, every `K_{a,b}` with `a + b <= 7`, windmills with 2 and 3
/// blades, and [`RANDOM_GRAPHS`] seeded random graphs on 5, 6 or 7 vertices.
pub fn standard_corpus(seed: u64) -> Vec<CorpusGraph> {
    let mut families = Vec::new();
    families.extend((2..=7).map(Family::Path));
    families.extend((3..=7).map(Family::Cycle));
    families.extend((2..=6).map(Family::Complete));
    families.extend((1..=6).map(Family::Null));
    families.extend((3..=7).map(Family::Star));
    families.extend((3..=6).map(Family::Wheel));
    for a in 1..=6 {
        for b in 1..=7 - a {
            families.push(Family::CompleteBipartite(a, b));
        }
    }
    families.extend([Family::Windmill(2), Family::Windmill(3)]);
    let mut corpus: Vec<CorpusGraph> = families.into_iter().map(CorpusGraph::named).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..RANDOM_GRAPHS {
        let n = 5 + i % 3;
        let graph = random_graph(&mut rng, n);
        corpus.push(CorpusGraph {
            name: format!("random:{seed}:{i}(n={n},m={})", graph.edge_count()),
            family: None,
            graph,
        });
    }
    corpus
}
