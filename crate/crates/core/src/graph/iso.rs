//! Exact isomorphism testing and canonical forms for small graphs.

use std::cmp::Ordering;

use super::{Graph, GraphError};

/// Largest graph accepted by [`are_isomorphic`].
pub const ISOMORPHISM_MAX_NODES: usize = 64;
/// Largest graph accepted by [`canonical_form`].
pub const CANONICAL_MAX_NODES: usize = 32;

fn bitsets(g: &Graph) -> Vec<u64> {
    (1..=g.node_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << (u - 1)))
        .collect()
}

fn check_size(g: &Graph, bound: usize, operation: &'static str) -> Result<(), GraphError> {
    if g.node_count() > bound {
        return Err(GraphError::TooLarge {
            operation,
            actual: g.node_count(),
            bound,
        });
    }
    Ok(())
}

/// Per-vertex refinement signature: degree followed by sorted neighbor degrees.
fn signatures(g: &Graph) -> Vec<Vec<usize>> {
    (1..=g.node_count())
        .map(|v| {
            let mut sig: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            sig.sort_unstable();
            sig.insert(0, g.degree(v));
            sig
        })
        .collect()
}

/// True iff an adjacency-preserving bijection between the vertex sets exists.
///
/// Backtracking over vertices of `g` in a connectivity-first order, with
/// candidates restricted to vertices of `h` carrying the same degree
/// signature.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    check_size(g, ISOMORPHISM_MAX_NODES, "isomorphism")?;
    check_size(h, ISOMORPHISM_MAX_NODES, "isomorphism")?;
    if g.node_count() != h.node_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let (sg, sh) = (signatures(g), signatures(h));
    let mut a = sg.clone();
    let mut b = sh.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(false);
    }

    let n = g.node_count();
    let (ag, ah) = (bitsets(g), bitsets(h));

    // Each next vertex maximizes links to already ordered vertices.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed & (1 << v) == 0)
            .max_by_key(|&v| ((ag[v] & placed).count_ones(), sg[v][0], std::cmp::Reverse(v)))
            .expect("unplaced vertex exists");
        placed |= 1 << next;
        order.push(next);
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = 0u64;
    Ok(extend(0, &order, &ag, &ah, &sg, &sh, &mut mapping, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    ag: &[u64],
    ah: &[u64],
    sg: &[Vec<usize>],
    sh: &[Vec<usize>],
    mapping: &mut [usize],
    used: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..ah.len() {
        if *used & (1 << w) != 0 || sg[v] != sh[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let in_g = ag[v] & (1 << u) != 0;
            let in_h = ah[w] & (1 << mapping[u]) != 0;
            in_g == in_h
        });
        if !consistent {
            continue;
        }
        mapping[v] = w;
        *used |= 1 << w;
        if extend(depth + 1, order, ag, ah, sg, sh, mapping, used) {
            return true;
        }
        *used &= !(1 << w);
        mapping[v] = usize::MAX;
    }
    false
}

/// Lexicographically minimal row-major upper-triangle adjacency string over
/// all node orderings, as ASCII '0'/'1'.
///
/// The search places one vertex per position. Once positions `1..k` are
/// fixed, unplaced vertices fall into an ordered partition of position
/// blocks (vertices sharing the same adjacency to every placed vertex), and
/// the best row for position `k` puts non-neighbors ahead of neighbors inside
/// each block. Only vertices yielding the minimal row are branched on, and
/// of those only one per class of interchangeable twins.
pub fn canonical_form(g: &Graph) -> Result<String, GraphError> {
    check_size(g, CANONICAL_MAX_NODES, "canonical form")?;
    let n = g.node_count();
    let mut search = CanonSearch {
        adj: bitsets(g),
        best: None,
        prefix: Vec::with_capacity(n * n.saturating_sub(1) / 2),
    };
    search.descend(vec![(0..n).collect()]);
    let best = search.best.unwrap_or_default();
    Ok(best.into_iter().map(|b| if b == 1 { '1' } else { '0' }).collect())
}

struct CanonSearch {
    adj: Vec<u64>,
    best: Option<Vec<u8>>,
    prefix: Vec<u8>,
}

impl CanonSearch {
    fn row_key(&self, v: usize, cells: &[Vec<usize>]) -> Vec<u32> {
        cells
            .iter()
            .map(|cell| {
                cell.iter()
                    .filter(|&&u| u != v && self.adj[v] & (1 << u) != 0)
                    .count() as u32
            })
            .collect()
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        if cells.is_empty() {
            if self.best.as_ref().is_none_or(|b| self.prefix < *b) {
                self.best = Some(self.prefix.clone());
            }
            return;
        }

        let remaining: u64 = cells.iter().flatten().fold(0, |m, &u| m | 1 << u);
        let keyed: Vec<(usize, Vec<u32>)> =
            cells[0].iter().map(|&v| (v, self.row_key(v, &cells))).collect();
        let min_key = keyed.iter().map(|(_, k)| k).min().expect("non-empty cell").clone();

        let mut reps: Vec<usize> = Vec::new();
        for (v, key) in keyed {
            if key != min_key {
                continue;
            }
            let twin_of_rep = reps.iter().any(|&r| {
                let mask = remaining & !(1 << r) & !(1 << v);
                self.adj[r] & mask == self.adj[v] & mask
            });
            if !twin_of_rep {
                reps.push(v);
            }
        }

        for v in reps {
            let mark = self.prefix.len();
            let mut next = Vec::with_capacity(cells.len() * 2);
            for cell in &cells {
                let (mut off, mut on) = (Vec::new(), Vec::new());
                for &u in cell.iter().filter(|&&u| u != v) {
                    if self.adj[v] & (1 << u) != 0 {
                        on.push(u);
                    } else {
                        off.push(u);
                    }
                }
                self.prefix.extend(std::iter::repeat_n(0, off.len()));
                self.prefix.extend(std::iter::repeat_n(1, on.len()));
                if !off.is_empty() {
                    next.push(off);
                }
                if !on.is_empty() {
                    next.push(on);
                }
            }
            let worse = self
                .best
                .as_ref()
                .is_some_and(|b| self.prefix.as_slice().cmp(&b[..self.prefix.len()]) == Ordering::Greater);
            if !worse {
                self.descend(next);
            }
            self.prefix.truncate(mark);
        }
    }
}
