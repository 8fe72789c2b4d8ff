//! Graph constructions: ZK growth, digit-stream graphs, random baselines and
//! entropy-targeted degree sequences.

mod random;
mod targeted;
mod zk;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::digits::DigitStream;
use crate::graph::{Graph, GraphError};

pub use random::{ba_graph, er_graph, er_graph_exact};
pub use targeted::{correlated_pair, targeted_degree_sequence, CorrelationMatrix};
pub use zk::{zk_edge_count_formula, zk_graph, zk_graph_randomized, ZkGrowth, ZkStep, ZkTrace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("digit graph needs a base-2 stream, got base {0}")]
    NotBinary(u32),
    #[error("digit graph on {n} nodes needs {needed} digits, stream has {available}")]
    InsufficientDigits {
        n: usize,
        needed: usize,
        available: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("target entropy {target} bits unreachable within tolerance {tol} (best {best})")]
    Unreachable { target: f64, tol: f64, best: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How many stream digits a digit graph consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DigitGraphMode {
    /// n(n-1)/2 digits fill the strict upper triangle row-major.
    #[default]
    UpperTriangle,
    /// n*n digits fill the full matrix row-major; only the strict upper
    /// triangle is read.
    FullMatrix,
}

impl DigitGraphMode {
    pub fn digits_needed(self, n: usize) -> usize {
        match self {
            DigitGraphMode::UpperTriangle => n * n.saturating_sub(1) / 2,
            DigitGraphMode::FullMatrix => n * n,
        }
    }
}

/// Graph whose adjacency matrix is read from consecutive bits of `s`,
/// mirrored to symmetry with a zero diagonal.
pub fn digit_graph(s: &DigitStream, n: usize, mode: DigitGraphMode) -> Result<Graph, GeneratorError> {
    if s.base() != 2 {
        return Err(GeneratorError::NotBinary(s.base()));
    }
    let needed = mode.digits_needed(n);
    if s.len() < needed {
        return Err(GeneratorError::InsufficientDigits {
            n,
            needed,
            available: s.len(),
        });
    }
    let bits = s.digits();
    let upper: Vec<u8> = match mode {
        DigitGraphMode::UpperTriangle => bits[..needed].to_vec(),
        DigitGraphMode::FullMatrix => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| bits[i * n + j]))
            .collect(),
    };
    Ok(Graph::from_upper_triangle(n, &upper)?)
}

/// Circulant k-regular ring: node i joins the k/2 nearest nodes on each side.
pub fn regular_ring_graph(n: usize, k: usize) -> Result<Graph, GeneratorError> {
    if !k.is_multiple_of(2) || k >= n {
        return Err(GeneratorError::InvalidParameters(format!(
            "ring needs even k < n, got n={n}, k={k}"
        )));
    }
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for step in 1..=k / 2 {
            let j = (i + step) % n;
            edges.insert(((i.min(j)) + 1, (i.max(j)) + 1));
        }
    }
    Ok(Graph::from_normalized(n, edges))
}
