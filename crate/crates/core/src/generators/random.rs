use std::collections::BTreeSet;

use rand::seq::index;
use rand::Rng as _;

use super::GeneratorError;
use crate::graph::Graph;
use crate::rng::rng_from_seed;

/// G(n, p): every unordered pair independently with probability `p`.
pub fn er_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(GeneratorError::InvalidParameters(format!("er needs n >= 1 and p in [0,1], got n={n}, p={p}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = BTreeSet::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random::<f64>() < p {
                edges.insert((u, v));
            }
        }
    }
    Ok(Graph::from_normalized(n, edges))
}

/// G(n, M): uniform among graphs with exactly `m` edges.
pub fn er_graph_exact(n: usize, m: usize, seed: u64) -> Result<Graph, GeneratorError> {
    let pairs = n * n.saturating_sub(1) / 2;
    if n == 0 || m > pairs {
        return Err(GeneratorError::InvalidParameters(format!(
            "exact er needs n >= 1 and m <= C(n,2), got n={n}, m={m}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut chosen = index::sample(&mut rng, pairs, m).into_vec();
    chosen.sort_unstable();
    let mut edges = BTreeSet::new();
    let (mut u, mut row_start) = (1usize, 0usize);
    for idx in chosen {
        // Row u holds pairs (u, u+1..=n), n - u of them.
        while idx >= row_start + (n - u) {
            row_start += n - u;
            u += 1;
        }
        edges.insert((u, u + 1 + (idx - row_start)));
    }
    Ok(Graph::from_normalized(n, edges))
}

/// Barabási–Albert preferential attachment.
///
/// Seeded with the complete graph on `m + 1` nodes; each later node links to
/// `m` distinct existing nodes drawn without replacement with probability
/// proportional to current degree.
pub fn ba_graph(n: usize, m: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if m == 0 || n < m + 1 {
        return Err(GeneratorError::InvalidParameters(format!("ba needs m >= 1 and n >= m+1, got n={n}, m={m}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut degree = vec![0usize; n];
    let mut edges = BTreeSet::new();
    for u in 1..=m + 1 {
        for v in u + 1..=m + 1 {
            edges.insert((u, v));
        }
    }
    degree[..=m].fill(m);
    let mut picked = Vec::with_capacity(m);
    for new in m + 1..n {
        picked.clear();
        for _ in 0..m {
            let total: usize = (0..new).filter(|v| !picked.contains(v)).map(|v| degree[v]).sum();
            let mut r = rng.random_range(0..total);
            let target = (0..new)
                .filter(|v| !picked.contains(v))
                .find(|&v| {
                    if r < degree[v] {
                        true
                    } else {
                        r -= degree[v];
                        false
                    }
                })
                .expect("r < total");
            picked.push(target);
        }
        for &t in &picked {
            degree[t] += 1;
            edges.insert((t + 1, new + 1));
        }
        degree[new] = m;
    }
    Ok(Graph::from_normalized(n, edges))
}
