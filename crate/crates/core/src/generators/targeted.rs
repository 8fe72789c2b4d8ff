//! Correlated Gaussian pairs and degree sequences with a prescribed
//! degree-distribution entropy.

use rand_distr::{Distribution as _, StandardNormal};

use super::GeneratorError;
use crate::graph::{is_graphical, DegreeSequence};
use crate::measures::entropy_of_counts;
use crate::rng::rng_from_seed;

/// 2x2 mixing matrix whose rows each sum to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix {
    rows: [[f64; 2]; 2],
}

impl CorrelationMatrix {
    pub fn new(rows: [[f64; 2]; 2]) -> Result<Self, GeneratorError> {
        for row in &rows {
            if row.iter().any(|x| !x.is_finite()) || (row[0] + row[1] - 1.0).abs() > 1e-12 {
                return Err(GeneratorError::InvalidParameters(format!(
                    "correlation matrix rows must sum to 1, got {row:?}"
                )));
            }
        }
        Ok(CorrelationMatrix { rows })
    }

    pub fn identity() -> Self {
        CorrelationMatrix {
            rows: [[1.0, 0.0], [0.0, 1.0]],
        }
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        self.rows
    }

    /// Pearson correlation of the mixed pair: cosine of the angle between the
    /// two rows.
    pub fn expected_correlation(&self) -> f64 {
        let [a, b] = self.rows;
        let dot = a[0] * b[0] + a[1] * b[1];
        dot / ((a[0] * a[0] + a[1] * a[1]).sqrt() * (b[0] * b[0] + b[1] * b[1]).sqrt())
    }
}

/// Draws independent standard normal sequences X1, X2 of length `count`
/// and returns Y = M [X1; X2], i.e. `Y_i = m_i1 X1 + m_i2 X2`.
pub fn correlated_pair(
    m: &CorrelationMatrix,
    count: usize,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>), GeneratorError> {
    if count < 2 {
        return Err(GeneratorError::InvalidParameters(format!("correlated pair needs count >= 2, got {count}")));
    }
    let mut rng = rng_from_seed(seed);
    let [r1, r2] = m.rows;
    let mut y1 = Vec::with_capacity(count);
    let mut y2 = Vec::with_capacity(count);
    for _ in 0..count {
        let x1: f64 = StandardNormal.sample(&mut rng);
        let x2: f64 = StandardNormal.sample(&mut rng);
        y1.push(r1[0] * x1 + r1[1] * x2);
        y2.push(r2[0] * x1 + r2[1] * x2);
    }
    Ok((y1, y2))
}

/// Largest-remainder allocation of `n` items over weights `q^k`, k < bins.
fn allocate(n: usize, bins: usize, q: f64) -> Vec<usize> {
    let weights: Vec<f64> = (0..bins).map(|k| q.powi(k as i32)).collect();
    let total: f64 = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|w| n as f64 * w / total).collect();
    let mut counts: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
    let mut short = n - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..bins).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for k in order {
        if short == 0 {
            break;
        }
        counts[k] += 1;
        short -= 1;
    }
    counts
}

/// Degree sequence on `n` nodes whose degree-frequency entropy is within
/// `tol` bits of `target`.
///
/// Degree values `2, 3, ..` form bins with geometric weights `q^k`; the bin
/// count is the smallest `K` with `log2 K >= target` and `q` is bisected on
/// the entropy of the rounded allocation. Nodes are assigned to bins by
/// quantizing a seeded Gaussian draw from [`correlated_pair`], so the seed
/// fixes which labels carry which degree. An odd degree sum is fixed by
/// shifting the top bins up by one, which keeps the bin sizes; if the result
/// is still not graphical, maximal entries are decremented until it is.
pub fn targeted_degree_sequence(
    n: usize,
    target: f64,
    tol: f64,
    seed: u64,
) -> Result<DegreeSequence, GeneratorError> {
    if n < 3 || tol.is_nan() || tol <= 0.0 || !(0.0..=(n as f64).log2()).contains(&target) {
        return Err(GeneratorError::InvalidParameters(format!(
            "targeted sequence needs n >= 3, tol > 0, 0 <= target <= log2 n; got n={n}, target={target}, tol={tol}"
        )));
    }
    let max_bins = (n - 3).max(1);
    let mut bins = 1usize;
    while ((bins as f64).log2() < target - 1e-12) && bins < max_bins {
        bins += 1;
    }

    let h = |q: f64| entropy_of_counts(allocate(n, bins, q).into_iter());
    let mut best = (1.0, h(1.0));
    if (best.1 - target).abs() > 1e-12 {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            let value = h(mid);
            if (value - target).abs() < (best.1 - target).abs() {
                best = (mid, value);
            }
            if value < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let counts = allocate(n, bins, best.0);

    let (draw, _) = correlated_pair(&CorrelationMatrix::identity(), n, seed)?;
    let mut ranks: Vec<usize> = (0..n).collect();
    ranks.sort_by(|&a, &b| draw[a].total_cmp(&draw[b]).then(a.cmp(&b)));
    let mut degrees = vec![0i64; n];
    let mut cursor = 0;
    for (k, &c) in counts.iter().enumerate() {
        for &node in &ranks[cursor..cursor + c] {
            degrees[node] = k as i64 + 2;
        }
        cursor += c;
    }

    let decrement_max = |d: &mut Vec<i64>| {
        let top = *d.iter().max().expect("n >= 3");
        let at = d.iter().position(|&x| x == top).expect("max exists");
        d[at] -= 1;
    };
    if degrees.iter().sum::<i64>() % 2 != 0 {
        // Raise the top classes whose sizes sum to an odd number; the class
        // sizes are kept.
        let mut suffix = 0;
        for k in (0..counts.len()).rev() {
            suffix += counts[k];
            if suffix % 2 == 1 {
                let floor = k as i64 + 2;
                degrees.iter_mut().filter(|d| **d >= floor).for_each(|d| *d += 1);
                break;
            }
        }
        if degrees.iter().sum::<i64>() % 2 != 0 {
            decrement_max(&mut degrees);
        }
    }
    while !is_graphical(&degrees)? {
        decrement_max(&mut degrees);
        if degrees.iter().sum::<i64>() % 2 != 0 {
            decrement_max(&mut degrees);
        }
    }

    let degrees: Vec<usize> = degrees.into_iter().map(|d| d as usize).collect();
    let achieved = entropy_of_counts(frequency_counts(&degrees).into_iter());
    if (achieved - target).abs() > tol {
        return Err(GeneratorError::Unreachable {
            target,
            tol,
            best: achieved,
        });
    }
    Ok(DegreeSequence::new(degrees)?)
}

fn frequency_counts(values: &[usize]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut counts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
        counts.push(j);
        i += j;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pearson(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
        let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
        let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
        cov / (va.sqrt() * vb.sqrt())
    }

    fn degree_entropy(seq: &DegreeSequence) -> f64 {
        entropy_of_counts(frequency_counts(seq.degrees()).into_iter())
    }

    #[test]
    fn matrix_validation() {
        assert!(CorrelationMatrix::new([[0.5, 0.5], [1.0, 0.0]]).is_ok());
        assert!(CorrelationMatrix::new([[0.5, 0.6], [1.0, 0.0]]).is_err());
    }

    #[test]
    fn correlated_pair_examples() {
        let (a, b) = correlated_pair(&CorrelationMatrix::identity(), 10_000, 1).unwrap();
        assert!(pearson(&a, &b).abs() < 0.1);

        let same = CorrelationMatrix::new([[0.5, 0.5], [0.5, 0.5]]).unwrap();
        let (a, b) = correlated_pair(&same, 10_000, 2).unwrap();
        assert!((pearson(&a, &b) - 1.0).abs() < 0.05);

        let m = CorrelationMatrix::new([[1.0, 0.0], [0.6, 0.4]]).unwrap();
        let expected = 0.6 / (0.36f64 + 0.16).sqrt();
        assert!((m.expected_correlation() - expected).abs() < 1e-15);
        let (a, b) = correlated_pair(&m, 100_000, 3).unwrap();
        assert!((pearson(&a, &b) - expected).abs() < 0.01);

        assert!(correlated_pair(&m, 1, 0).is_err());
    }

    #[test]
    fn target_zero_is_regular() {
        for n in [3usize, 10, 51] {
            let seq = targeted_degree_sequence(n, 0.0, 0.1, 4).unwrap();
            assert!(seq.degrees().iter().all(|&d| d == seq.degrees()[0]));
            assert_eq!(degree_entropy(&seq), 0.0);
        }
    }

    #[test]
    fn uniform_classes_hit_log2_k_exactly() {
        for (n, k) in [(40usize, 4usize), (48, 8), (30, 2)] {
            let target = (k as f64).log2();
            let seq = targeted_degree_sequence(n, target, 1e-9, 6).unwrap();
            assert!((degree_entropy(&seq) - target).abs() < 1e-12);
        }
    }

    #[test]
    fn fifty_nodes_three_bits() {
        for seed in 0..10 {
            let seq = targeted_degree_sequence(50, 3.0, 0.2, seed).unwrap();
            let raw: Vec<i64> = seq.degrees().iter().map(|&d| d as i64).collect();
            assert!(is_graphical(&raw).unwrap());
            assert!((degree_entropy(&seq) - 3.0).abs() <= 0.2);
        }
    }

    #[test]
    fn seed_moves_labels_not_counts() {
        let a = targeted_degree_sequence(50, 2.5, 0.2, 1).unwrap();
        let b = targeted_degree_sequence(50, 2.5, 0.2, 2).unwrap();
        assert_eq!(a.sorted(), b.sorted());
        assert_ne!(a, b);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(targeted_degree_sequence(50, 7.0, 0.2, 0).is_err());
        assert!(targeted_degree_sequence(50, 1.0, 0.0, 0).is_err());
        assert!(targeted_degree_sequence(2, 0.0, 0.1, 0).is_err());
    }
}
