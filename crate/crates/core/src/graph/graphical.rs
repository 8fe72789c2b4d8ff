use std::collections::BTreeSet;

use super::{Graph, GraphError};

fn checked_degrees(seq: &[i64]) -> Result<Vec<usize>, GraphError> {
    seq.iter()
        .map(|&d| {
            if d < 0 {
                Err(GraphError::NegativeDegree(d))
            } else {
                Ok(d as usize)
            }
        })
        .collect()
}

/// Erdős–Gallai test: true iff some simple graph has this degree multiset.
pub fn is_graphical(seq: &[i64]) -> Result<bool, GraphError> {
    let mut d = checked_degrees(seq)?;
    let n = d.len();
    if d.iter().sum::<usize>() % 2 != 0 {
        return Ok(false);
    }
    d.sort_unstable_by(|a, b| b.cmp(a));
    if d.first().is_some_and(|&m| m >= n) {
        return Ok(false);
    }
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Havel–Hakimi realization. Node `i` receives degree `seq[i - 1]`.
///
/// At each round the node with the largest remaining demand (smallest label
/// on ties) is joined to the next-largest demands, again breaking ties by
/// smallest label.
pub fn realize_graph(seq: &[i64]) -> Result<Graph, GraphError> {
    let demand = checked_degrees(seq)?;
    if demand.is_empty() {
        return Err(GraphError::Empty);
    }
    if !is_graphical(seq)? {
        return Err(GraphError::NotGraphical);
    }
    let n = demand.len();
    let mut remaining = demand;
    let mut edges = BTreeSet::new();
    loop {
        let mut order: Vec<usize> = (0..n).filter(|&i| remaining[i] > 0).collect();
        if order.is_empty() {
            break;
        }
        order.sort_by(|&a, &b| remaining[b].cmp(&remaining[a]).then(a.cmp(&b)));
        let hub = order[0];
        let k = remaining[hub];
        if k > order.len() - 1 {
            return Err(GraphError::NotGraphical);
        }
        remaining[hub] = 0;
        for &other in &order[1..=k] {
            remaining[other] -= 1;
            edges.insert((hub.min(other) + 1, hub.max(other) + 1));
        }
    }
    Ok(Graph::from_normalized(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphical_examples() {
        assert!(is_graphical(&[3, 3, 3, 3]).unwrap());
        assert!(!is_graphical(&[3, 1]).unwrap());
        assert!(!is_graphical(&[1, 1, 1]).unwrap());
        assert!(is_graphical(&[]).unwrap());
        assert!(is_graphical(&[0, 0]).unwrap());
        assert!(!is_graphical(&[3, 3, 1, 1]).unwrap());
        assert_eq!(is_graphical(&[1, -1]), Err(GraphError::NegativeDegree(-1)));
    }

    #[test]
    fn realize_examples() {
        let tri = realize_graph(&[2, 2, 2]).unwrap();
        assert_eq!(tri.edge_count(), 3);
        let edge = realize_graph(&[1, 1]).unwrap();
        assert_eq!(edge.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        let g = realize_graph(&[3, 2, 2, 2, 1]).unwrap();
        assert_eq!(g.degree_sequence().degrees(), &[3, 2, 2, 2, 1]);
        assert_eq!(realize_graph(&[3, 1]), Err(GraphError::NotGraphical));
        assert_eq!(realize_graph(&[]), Err(GraphError::Empty));
    }

    #[test]
    fn realization_is_deterministic() {
        let seq = [4, 3, 3, 2, 2, 2, 1, 1];
        assert_eq!(realize_graph(&seq).unwrap(), realize_graph(&seq).unwrap());
    }
}
