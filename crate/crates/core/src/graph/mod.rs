//! Simple undirected labelled graphs and their lossless descriptions.
//!
//! Node labels are 1-based (`1..=node_count`). Edges are stored normalized
//! as `(u, v)` with `u < v` in a sorted set, so iteration order is stable and
//! every serialized artifact is reproducible.

mod graphical;
mod io;
mod iso;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

pub use graphical::{is_graphical, realize_graph};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};
pub use iso::{are_isomorphic, canonical_form, CANONICAL_MAX_NODES, ISOMORPHISM_MAX_NODES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("label {label} out of range 1..={node_count}")]
    LabelOutOfRange { label: usize, node_count: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("operation needs at least {needed} nodes, graph has {actual}")]
    TooFewNodes { needed: usize, actual: usize },
    #[error("graph has {actual} nodes, exceeding the bound of {bound} for {operation}")]
    TooLarge {
        operation: &'static str,
        actual: usize,
        bound: usize,
    },
    #[error("negative degree {0} in sequence")]
    NegativeDegree(i64),
    #[error("sequence is not graphical")]
    NotGraphical,
    #[error("malformed edge list at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("io error: {0}")]
    Io(String),
}

/// Simple undirected labelled graph. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: BTreeSet<(usize, usize)>,
    // neighbors[label - 1], sorted ascending
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting out-of-range labels, self-loops and
    /// duplicate edges (in either orientation).
    pub fn new<I>(node_count: usize, edge_list: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut edges = BTreeSet::new();
        for (a, b) in edge_list {
            for label in [a, b] {
                if label == 0 || label > node_count {
                    return Err(GraphError::LabelOutOfRange { label, node_count });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let pair = (a.min(b), a.max(b));
            if !edges.insert(pair) {
                return Err(GraphError::DuplicateEdge(pair.0, pair.1));
            }
        }
        Ok(Self::from_normalized(node_count, edges))
    }

    /// Graph with `node_count` nodes and no edges.
    pub fn empty(node_count: usize) -> Result<Self, GraphError> {
        Self::new(node_count, std::iter::empty())
    }

    /// Complete graph K_n.
    pub fn complete(node_count: usize) -> Result<Self, GraphError> {
        Self::new(
            node_count,
            (1..=node_count).flat_map(|u| (u + 1..=node_count).map(move |v| (u, v))),
        )
    }

    pub(crate) fn from_normalized(node_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            neighbors[u - 1].push(v);
            neighbors[v - 1].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Graph {
            node_count,
            edges,
            neighbors,
        }
    }

    /// Builds a graph from an upper-triangle bit string read row-major:
    /// (1,2), (1,3), ..., (1,n), (2,3), ...
    pub fn from_upper_triangle(node_count: usize, bits: &[u8]) -> Result<Self, GraphError> {
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        let needed = node_count * (node_count - 1) / 2;
        if bits.len() != needed {
            return Err(GraphError::Parse {
                line: 0,
                reason: format!("expected {needed} upper-triangle bits, got {}", bits.len()),
            });
        }
        let mut edges = BTreeSet::new();
        let mut k = 0;
        for u in 1..=node_count {
            for v in u + 1..=node_count {
                match bits[k] {
                    0 => {}
                    1 => {
                        edges.insert((u, v));
                    }
                    other => {
                        return Err(GraphError::Parse {
                            line: 0,
                            reason: format!("bit value {other} at position {k}"),
                        })
                    }
                }
                k += 1;
            }
        }
        Ok(Self::from_normalized(node_count, edges))
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Normalized edges `(u, v)`, `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Sorted neighbor labels of `label`.
    pub fn neighbors(&self, label: usize) -> &[usize] {
        &self.neighbors[label - 1]
    }

    pub fn degree(&self, label: usize) -> usize {
        self.neighbors[label - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn adjacency_matrix(&self) -> BitMatrix {
        let n = self.node_count;
        let mut bits = vec![false; n * n];
        for &(u, v) in &self.edges {
            bits[(u - 1) * n + (v - 1)] = true;
            bits[(v - 1) * n + (u - 1)] = true;
        }
        BitMatrix { dimension: n, bits }
    }

    /// Upper off-diagonal cells of the adjacency matrix, row-major, as 0/1.
    pub fn upper_triangle_bits(&self) -> Vec<u8> {
        let n = self.node_count;
        let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 1..=n {
            let row = &self.neighbors[u - 1];
            let mut it = row.iter().copied().filter(|&v| v > u).peekable();
            for v in u + 1..=n {
                if it.peek() == Some(&v) {
                    it.next();
                    bits.push(1);
                } else {
                    bits.push(0);
                }
            }
        }
        bits
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence {
            degrees: self.neighbors.iter().map(Vec::len).collect(),
        }
    }

    /// |E| / C(n, 2) as an exact rational.
    pub fn edge_density(&self) -> Result<Ratio<u64>, GraphError> {
        if self.node_count < 2 {
            return Err(GraphError::TooFewNodes {
                needed: 2,
                actual: self.node_count,
            });
        }
        let n = self.node_count as u64;
        Ok(Ratio::new(self.edges.len() as u64, n * (n - 1) / 2))
    }

    /// Relabels node `v` as `perm[v - 1]`. `perm` must be a permutation of
    /// `1..=node_count`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        assert_eq!(perm.len(), self.node_count, "permutation length mismatch");
        Graph::new(
            self.node_count,
            self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])),
        )
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("node_count", &self.node_count)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Degrees indexed by node label (label order preserved).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Wraps raw degrees; the sum must be even.
    pub fn new(degrees: Vec<usize>) -> Result<Self, GraphError> {
        if degrees.iter().sum::<usize>() % 2 != 0 {
            return Err(GraphError::NotGraphical);
        }
        Ok(DegreeSequence { degrees })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn sorted(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.degrees
    }
}

/// Square 0/1 matrix stored row-major. Indices are 0-based.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    dimension: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.dimension + col]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dimension;
        (0..n).all(|i| (i + 1..n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.dimension).all(|i| !self.get(i, i))
    }

    /// Row-major upper off-diagonal cells as an ASCII '0'/'1' string.
    pub fn upper_triangle_string(&self) -> String {
        let n = self.dimension;
        let mut s = String::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
        }
        s
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.bits
            .chunks(self.dimension.max(1))
            .map(|r| r.iter().map(|&b| b as u8).collect())
            .collect()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.bits.chunks(self.dimension.max(1)) {
            for &b in row {
                f.write_str(if b { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})\n{}", self.dimension, self.dimension, self)
    }
}
