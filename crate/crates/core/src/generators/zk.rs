//! The ZK graph: a recursively grown graph whose node labelled `n` is driven
//! to degree `n` ("core" node). Other nodes are "supportive".
//!
//! Deterministic growth step, starting from the single edge 1-2:
//!
//! 1. `M` = current maximum degree, candidate `c = M + 1`, `d = deg(c)`.
//! 2. Join `c` to every label in `c+1 ..= c + (M + 1 - d)`, creating nodes
//!    that do not exist yet.
//!
//! Afterwards `c` has degree `M + 1 = c`, i.e. it is core.

use std::collections::{BTreeSet, HashSet};

use rand::seq::{IndexedRandom, SliceRandom};

use crate::graph::Graph;
use crate::rng::rng_from_seed;

/// One growth step of the deterministic construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZkStep {
    /// Maximum degree before the step.
    pub max_degree: usize,
    /// Label converted to core (`max_degree + 1`).
    pub candidate: usize,
    /// Edges added, `max_degree + 1 - prior degree of candidate`.
    pub edges_added: usize,
}

#[derive(Debug, Clone)]
pub struct ZkTrace {
    pub graph: Graph,
    pub steps: Vec<ZkStep>,
}

/// Incremental deterministic ZK growth; [`ZkGrowth::graph`] snapshots the
/// current state.
#[derive(Debug, Clone)]
pub struct ZkGrowth {
    // adj[label - 1]
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    max_degree: usize,
    steps: Vec<ZkStep>,
}

impl Default for ZkGrowth {
    fn default() -> Self {
        Self::new()
    }
}

impl ZkGrowth {
    pub fn new() -> Self {
        ZkGrowth {
            adj: vec![vec![2], vec![1]],
            edge_count: 1,
            max_degree: 1,
            steps: Vec::new(),
        }
    }

    pub fn step(&mut self) -> ZkStep {
        let m = self.max_degree;
        let c = m + 1;
        if self.adj.len() < c {
            self.adj.resize(c, Vec::new());
        }
        let prior = self.adj[c - 1].len();
        let added = m + 1 - prior;
        for j in c + 1..=c + added {
            if self.adj.len() < j {
                self.adj.resize(j, Vec::new());
            }
            self.adj[c - 1].push(j);
            self.adj[j - 1].push(c);
            self.max_degree = self.max_degree.max(self.adj[j - 1].len());
        }
        self.max_degree = self.max_degree.max(self.adj[c - 1].len());
        self.edge_count += added;
        let record = ZkStep {
            max_degree: m,
            candidate: c,
            edges_added: added,
        };
        self.steps.push(record);
        record
    }

    pub fn steps_taken(&self) -> usize {
        self.steps.len()
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn graph(&self) -> Graph {
        let edges: BTreeSet<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&v| v > i + 1).map(move |&v| (i + 1, v)))
            .collect();
        Graph::from_normalized(self.adj.len(), edges)
    }

    pub fn into_trace(self) -> ZkTrace {
        ZkTrace {
            graph: self.graph(),
            steps: self.steps,
        }
    }
}

/// Deterministic ZK graph after `t` growth steps.
pub fn zk_graph(t: usize) -> ZkTrace {
    let mut growth = ZkGrowth::new();
    for _ in 0..t {
        growth.step();
    }
    growth.into_trace()
}

/// Closed-form edge count after `t` steps: sum of floor(k / phi) for
/// k = 1..=t+2, phi the golden ratio.
///
/// floor(k / phi) = floor((k*sqrt(5) - k) / 2) = floor((isqrt(5k^2) - k) / 2),
/// all in integers.
pub fn zk_edge_count_formula(t: usize) -> u128 {
    (1..=t as u128 + 2)
        .map(|k| ((5 * k * k).isqrt() - k) / 2)
        .sum()
}

/// ZK growth with random tie-breaking.
///
/// Each step converts a supportive node of maximal degree, chosen uniformly,
/// into a core node of degree `M + 1`. Its missing links go first to
/// non-adjacent supportive nodes in random order, then to fresh nodes.
/// Node 1 starts as core, node 2 as supportive.
pub fn zk_graph_randomized(t: usize, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::from([1]), HashSet::from([0])];
    let mut core = vec![true, false];

    for _ in 0..t {
        let m = adj.iter().map(HashSet::len).max().unwrap_or(0);
        let supportive: Vec<usize> = (0..adj.len()).filter(|&v| !core[v]).collect();
        let top = supportive.iter().map(|&v| adj[v].len()).max().unwrap_or(0);
        let tied: Vec<usize> = supportive.iter().copied().filter(|&v| adj[v].len() == top).collect();
        let c = *tied.choose(&mut rng).expect("a supportive node always exists");

        let need = m + 1 - adj[c].len();
        let mut eligible: Vec<usize> = supportive
            .iter()
            .copied()
            .filter(|&v| v != c && !adj[c].contains(&v))
            .collect();
        eligible.shuffle(&mut rng);
        eligible.truncate(need);
        while eligible.len() < need {
            adj.push(HashSet::new());
            core.push(false);
            eligible.push(adj.len() - 1);
        }
        for v in eligible {
            adj[c].insert(v);
            adj[v].insert(c);
        }
        core[c] = true;
    }

    let edges: BTreeSet<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(i, ns)| ns.iter().filter(move |&&v| v > i).map(move |&v| (i + 1, v + 1)))
        .collect();
    Graph::from_normalized(adj.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;
    use std::collections::HashMap;

    #[test]
    fn edge_counts_first_steps() {
        let counts: Vec<usize> = (0..=6).map(|t| zk_graph(t).graph.edge_count()).collect();
        assert_eq!(counts, vec![1, 2, 4, 7, 10, 14, 18]);
    }

    #[test]
    fn node_counts_first_steps() {
        let counts: Vec<usize> = (1..=6).map(|t| zk_graph(t).graph.node_count()).collect();
        assert_eq!(counts, vec![3, 5, 7, 8, 10, 11]);
    }

    #[test]
    fn seed_graph_at_zero_steps() {
        let g = zk_graph(0).graph;
        assert_eq!(g, Graph::new(2, [(1, 2)]).unwrap());
    }

    #[test]
    fn degrees_after_three_steps() {
        let g = zk_graph(3).graph;
        assert_eq!(&g.degree_sequence().degrees()[..4], &[1, 2, 3, 4]);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(zk_edge_count_formula(0), 1);
        assert_eq!(zk_edge_count_formula(3), 7);
        assert_eq!(zk_edge_count_formula(6), 18);
        assert_eq!(zk_edge_count_formula(18), 120);
        assert_eq!(zk_edge_count_formula(20), 145);
    }

    #[test]
    fn formula_matches_float_evaluation_at_small_k() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for t in 0..500usize {
            let float: u128 = (1..=t + 2).map(|k| (k as f64 / phi).floor() as u128).sum();
            assert_eq!(zk_edge_count_formula(t), float);
        }
    }

    #[test]
    fn trace_invariants_hold() {
        let trace = zk_graph(60);
        let mut growth = ZkGrowth::new();
        for rec in &trace.steps {
            let prior = if growth.node_count() >= rec.candidate {
                growth.graph().degree(rec.candidate)
            } else {
                0
            };
            let step = growth.step();
            assert_eq!(step, *rec);
            assert_eq!(rec.candidate, rec.max_degree + 1);
            assert_eq!(rec.edges_added, rec.max_degree + 1 - prior);
            assert_eq!(growth.graph().degree(rec.candidate), rec.candidate);
        }
    }

    #[test]
    fn degree_multiplicity_at_most_three() {
        let mut growth = ZkGrowth::new();
        for _ in 0..=200 {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &d in growth.graph().degree_sequence().degrees() {
                *counts.entry(d).or_default() += 1;
            }
            assert!(counts.values().all(|&c| c <= 3));
            growth.step();
        }
    }

    #[test]
    fn core_degrees_spell_champernowne() {
        let t = 40;
        let g = zk_graph(t).graph;
        let core: String = (1..=t + 1).map(|v| g.degree(v).to_string()).collect();
        let champ: String = crate::digits::champernowne_digits(10, core.len())
            .unwrap()
            .digits()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(core, champ);
    }

    #[test]
    fn deterministic() {
        assert_eq!(zk_graph(50).graph, zk_graph(50).graph);
    }

    #[test]
    fn randomized_examples() {
        assert_eq!(zk_graph_randomized(0, 99), Graph::new(2, [(1, 2)]).unwrap());
        assert_eq!(zk_graph_randomized(7, 5), zk_graph_randomized(7, 5));
        for t in 0..=8 {
            let det = zk_graph(t).graph;
            for seed in 0..5 {
                assert!(are_isomorphic(&det, &zk_graph_randomized(t, seed)).unwrap(), "t={t} seed={seed}");
            }
        }
    }
}
