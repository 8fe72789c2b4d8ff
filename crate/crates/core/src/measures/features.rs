//! Graph measures, each tied to the description it reads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::entropy::{block_entropy, entropy_of_counts, BlockMode};
use super::lz::lz_complexity;
use super::MeasureError;
use crate::graph::Graph;

/// Binary entropy of the edge-presence frequency over the n(n-1)/2 upper
/// off-diagonal cells. A function of (n, |E|) only.
pub fn adjacency_entropy(g: &Graph) -> Result<f64, MeasureError> {
    let n = g.node_count();
    if n < 2 {
        return Err(MeasureError::TooFewNodes(n));
    }
    let cells = n * (n - 1) / 2;
    let ones = g.edge_count();
    Ok(entropy_of_counts([ones, cells - ones].into_iter()))
}

/// Entropy of the empirical frequency distribution of the degree multiset.
pub fn degree_sequence_entropy(g: &Graph) -> f64 {
    entropy_of_counts(degree_histogram(g).into_iter().map(|(_, c)| c))
}

/// `(degree, count)` sorted by degree.
pub fn degree_histogram(g: &Graph) -> Vec<(usize, usize)> {
    let mut counts = BTreeMap::new();
    for &d in g.degree_sequence().degrees() {
        *counts.entry(d).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

fn triangles_through(g: &Graph, v: usize) -> usize {
    let ns = g.neighbors(v);
    let mut t = 0;
    for (i, &a) in ns.iter().enumerate() {
        let na = g.neighbors(a);
        t += ns[i + 1..].iter().filter(|b| na.binary_search(b).is_ok()).count();
    }
    t
}

/// Mean local clustering: average over nodes of triangles(v) / C(deg v, 2),
/// with 0 for nodes of degree below 2.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    let n = g.node_count();
    let total: f64 = (1..=n)
        .map(|v| {
            let d = g.degree(v);
            if d < 2 {
                0.0
            } else {
                triangles_through(g, v) as f64 / (d * (d - 1) / 2) as f64
            }
        })
        .sum();
    total / n as f64
}

/// Global transitivity: 3 x triangles / connected triples.
pub fn transitivity(g: &Graph) -> f64 {
    let (mut closed, mut triples) = (0usize, 0usize);
    for v in 1..=g.node_count() {
        let d = g.degree(v);
        closed += triangles_through(g, v);
        triples += d * d.saturating_sub(1) / 2;
    }
    if triples == 0 {
        0.0
    } else {
        closed as f64 / triples as f64
    }
}

/// The description a graph entropy is computed over. There is no
/// feature-free graph entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feature {
    Adjacency,
    DegreeSequence,
    /// Non-overlapping blocks of length L over the flattened upper triangle.
    Block(usize),
    /// LZ78 compressed size over raw size of the flattened upper triangle.
    Compression,
    Clustering,
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feature::Adjacency => f.write_str("adjacency"),
            Feature::DegreeSequence => f.write_str("degree-sequence"),
            Feature::Block(l) => write!(f, "block({l})"),
            Feature::Compression => f.write_str("compression"),
            Feature::Clustering => f.write_str("clustering"),
        }
    }
}

impl FromStr for Feature {
    type Err = MeasureError;

    /// Accepts `adjacency`, `degree-sequence`, `block:L` / `block(L)`,
    /// `compression`, `clustering`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || MeasureError::UnknownFeature(s.to_string());
        match s {
            "adjacency" => Ok(Feature::Adjacency),
            "degree-sequence" => Ok(Feature::DegreeSequence),
            "compression" => Ok(Feature::Compression),
            "clustering" => Ok(Feature::Clustering),
            _ => {
                let l = s
                    .strip_prefix("block:")
                    .or_else(|| s.strip_prefix("block(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(unknown)?;
                l.parse().map(Feature::Block).map_err(|_| unknown())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub feature: String,
    /// Bits for entropies; a ratio for compression and clustering.
    pub value: f64,
    pub parameters: BTreeMap<String, String>,
}

pub fn graph_entropy(g: &Graph, feature: Feature) -> Result<EntropyReport, MeasureError> {
    let mut parameters = BTreeMap::new();
    parameters.insert("nodes".into(), g.node_count().to_string());
    parameters.insert("edges".into(), g.edge_count().to_string());
    let value = match feature {
        Feature::Adjacency => adjacency_entropy(g)?,
        Feature::DegreeSequence => degree_sequence_entropy(g),
        Feature::Block(l) => {
            if g.node_count() < 2 {
                return Err(MeasureError::TooFewNodes(g.node_count()));
            }
            parameters.insert("L".into(), l.to_string());
            block_entropy(&g.upper_triangle_bits(), l, BlockMode::NonOverlapping)?
        }
        Feature::Compression => {
            if g.node_count() < 2 {
                return Err(MeasureError::TooFewNodes(g.node_count()));
            }
            let bits = g.upper_triangle_bits();
            let lz = lz_complexity(&bits)?;
            parameters.insert("phrases".into(), lz.phrases.to_string());
            parameters.insert("compressed_bits".into(), lz.compressed_bits.to_string());
            parameters.insert("raw_bits".into(), bits.len().to_string());
            lz.compressed_bits as f64 / bits.len() as f64
        }
        Feature::Clustering => clustering_coefficient(g),
    };
    Ok(EntropyReport {
        feature: feature.to_string(),
        value,
        parameters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{er_graph_exact, regular_ring_graph, zk_graph};
    use proptest::prelude::*;

    fn star4() -> Graph {
        Graph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(adjacency_entropy(&Graph::complete(6).unwrap()).unwrap(), 0.0);
        let half = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(adjacency_entropy(&half).unwrap(), 1.0);
        let ring = regular_ring_graph(30, 4).unwrap();
        let er = er_graph_exact(30, ring.edge_count(), 9).unwrap();
        assert_eq!(adjacency_entropy(&ring).unwrap(), adjacency_entropy(&er).unwrap());
        assert_eq!(adjacency_entropy(&Graph::empty(1).unwrap()), Err(MeasureError::TooFewNodes(1)));
    }

    #[test]
    fn degree_entropy_examples() {
        assert_eq!(degree_sequence_entropy(&regular_ring_graph(12, 4).unwrap()), 0.0);
        let h = degree_sequence_entropy(&star4());
        let expected = -(0.75f64 * 0.75f64.log2()) - 0.25 * 0.25f64.log2();
        assert!((h - expected).abs() < 1e-12);
        assert!((h - 0.8113).abs() < 1e-4);
        for t in [5usize, 20, 60] {
            let g = zk_graph(t).graph;
            assert!(degree_sequence_entropy(&g) >= (g.node_count() as f64 / 3.0).log2());
        }
    }

    #[test]
    fn clustering_examples() {
        assert_eq!(clustering_coefficient(&triangle()), 1.0);
        assert_eq!(clustering_coefficient(&star4()), 0.0);
        let k4_minus = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        assert!((clustering_coefficient(&k4_minus) - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(transitivity(&triangle()), 1.0);
        // 2 triangles * 3 / (3 + 3 + 1 + 1) triples
        assert!((transitivity(&k4_minus) - 6.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn histogram_examples() {
        assert_eq!(degree_histogram(&triangle()), vec![(2, 3)]);
        assert_eq!(degree_histogram(&star4()), vec![(1, 3), (3, 1)]);
    }

    #[test]
    fn feature_dispatch() {
        let g = zk_graph(50).graph;
        let adj = graph_entropy(&g, Feature::Adjacency).unwrap();
        let deg = graph_entropy(&g, Feature::DegreeSequence).unwrap();
        assert_eq!(adj.feature, "adjacency");
        assert_eq!(deg.feature, "degree-sequence");
        assert!((adj.value - deg.value).abs() > 1.0);
        assert_eq!(graph_entropy(&Graph::complete(4).unwrap(), Feature::Adjacency).unwrap().value, 0.0);
        assert!(matches!("entropy".parse::<Feature>(), Err(MeasureError::UnknownFeature(_))));
        assert!(matches!("block:x".parse::<Feature>(), Err(MeasureError::UnknownFeature(_))));
        assert_eq!("block:3".parse::<Feature>().unwrap(), Feature::Block(3));
        assert_eq!("block(3)".parse::<Feature>().unwrap(), Feature::Block(3));
        let block = graph_entropy(&g, Feature::Block(2)).unwrap();
        assert_eq!(block.feature, "block(2)");
        let comp = graph_entropy(&g, Feature::Compression).unwrap();
        assert!(comp.value > 0.0 && comp.value < 1.0);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..12).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let bits: Vec<u8> = bits.into_iter().map(u8::from).collect();
                Graph::from_upper_triangle(n, &bits).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn adjacency_entropy_depends_on_counts_only(g in arb_graph(), seed in any::<u64>()) {
            let other = er_graph_exact(g.node_count(), g.edge_count(), seed).unwrap();
            prop_assert_eq!(adjacency_entropy(&g).unwrap(), adjacency_entropy(&other).unwrap());
        }

        #[test]
        fn degree_entropy_relabel_invariant(g in arb_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let mut perm: Vec<usize> = (1..=g.node_count()).collect();
            perm.shuffle(&mut crate::rng::rng_from_seed(seed));
            let h = g.relabel(&perm).unwrap();
            prop_assert_eq!(degree_sequence_entropy(&g), degree_sequence_entropy(&h));
        }

        #[test]
        fn triangle_free_graphs_have_zero_clustering(n in 2usize..14, seed in any::<u64>()) {
            // bipartite graphs are triangle-free
            use rand::Rng as _;
            let mut rng = crate::rng::rng_from_seed(seed);
            let half = n / 2;
            let edges: Vec<(usize, usize)> = (1..=half)
                .flat_map(|u| (half + 1..=n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            prop_assert_eq!(clustering_coefficient(&g), 0.0);
        }
    }
}
