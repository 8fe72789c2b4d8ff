use std::collections::BTreeMap;

use super::MeasureError;

/// Finite probability mass function over labelled outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    outcomes: Vec<(T, f64)>,
}

const SUM_TOLERANCE: f64 = 1e-9;

impl<T> Distribution<T> {
    pub fn new(outcomes: Vec<(T, f64)>) -> Result<Self, MeasureError> {
        if outcomes.is_empty() {
            return Err(MeasureError::InvalidDistribution("no outcomes".into()));
        }
        if let Some((_, p)) = outcomes.iter().find(|(_, p)| !p.is_finite() || *p < 0.0) {
            return Err(MeasureError::InvalidDistribution(format!("probability {p}")));
        }
        let total: f64 = outcomes.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(MeasureError::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Distribution { outcomes })
    }

    /// Empirical distribution from `(label, count)` pairs.
    pub fn from_counts(counts: Vec<(T, usize)>) -> Result<Self, MeasureError> {
        let total: usize = counts.iter().map(|(_, c)| c).sum();
        if total == 0 {
            return Err(MeasureError::InvalidDistribution("zero total count".into()));
        }
        Distribution::new(
            counts
                .into_iter()
                .map(|(label, c)| (label, c as f64 / total as f64))
                .collect(),
        )
    }

    pub fn outcomes(&self) -> &[(T, f64)] {
        &self.outcomes
    }

    pub fn support_size(&self) -> usize {
        self.outcomes.iter().filter(|(_, p)| *p > 0.0).count()
    }
}

impl Distribution<usize> {
    pub fn uniform(k: usize) -> Result<Self, MeasureError> {
        if k == 0 {
            return Err(MeasureError::InvalidDistribution("no outcomes".into()));
        }
        Distribution::new((0..k).map(|i| (i, 1.0 / k as f64)).collect())
    }
}

/// H = -sum p log2 p, with 0 log 0 = 0.
pub fn shannon_entropy<T>(d: &Distribution<T>) -> f64 {
    let h: f64 = d
        .outcomes
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(_, p)| -p * p.log2())
        .sum();
    h.max(0.0)
}

/// Entropy of the empirical distribution given by raw counts, computed as
/// log2 N - (1/N) sum c log2 c. Equal counts give exactly log2 k.
pub fn entropy_of_counts(counts: impl Iterator<Item = usize>) -> f64 {
    let counts: Vec<usize> = counts.filter(|&c| c > 0).collect();
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    if counts.iter().all(|&c| c == counts[0]) {
        return (counts.len() as f64).log2();
    }
    let n = total as f64;
    let weighted: f64 = counts.iter().map(|&c| c as f64 * (c as f64).log2()).sum();
    (n.log2() - weighted / n).max(0.0)
}

/// How length-L blocks are cut from a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockMode {
    /// floor(len / L) disjoint blocks; the trailing partial block is dropped.
    #[default]
    NonOverlapping,
    /// All len - L + 1 windows.
    Sliding,
}

/// Entropy (bits per block) of the empirical distribution of length-`l`
/// blocks of `s`.
pub fn block_entropy<T: Ord>(s: &[T], l: usize, mode: BlockMode) -> Result<f64, MeasureError> {
    if s.is_empty() {
        return Err(MeasureError::EmptySequence);
    }
    if l == 0 || l > s.len() {
        return Err(MeasureError::BlockLength { block: l, len: s.len() });
    }
    let mut counts: BTreeMap<&[T], usize> = BTreeMap::new();
    match mode {
        BlockMode::NonOverlapping => {
            for block in s.chunks_exact(l) {
                *counts.entry(block).or_default() += 1;
            }
        }
        BlockMode::Sliding => {
            for block in s.windows(l) {
                *counts.entry(block).or_default() += 1;
            }
        }
    }
    Ok(entropy_of_counts(counts.into_values()))
}

/// Per-symbol block entropy `H_L / L` for `L = 1..=max_block`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyProfile {
    pub rates: Vec<(usize, f64)>,
    /// Smallest `L` attaining the minimum rate.
    pub argmin: usize,
}

impl EntropyProfile {
    pub fn min_rate(&self) -> f64 {
        self.rates[self.argmin - 1].1
    }
}

pub fn entropy_rate_profile<T: Ord>(s: &[T], max_block: usize, mode: BlockMode) -> Result<EntropyProfile, MeasureError> {
    if max_block == 0 {
        return Err(MeasureError::BlockLength { block: 0, len: s.len() });
    }
    let rates = (1..=max_block)
        .map(|l| Ok((l, block_entropy(s, l, mode)? / l as f64)))
        .collect::<Result<Vec<_>, MeasureError>>()?;
    let argmin = rates
        .iter()
        .fold((1, f64::INFINITY), |(best_l, best), &(l, r)| if r < best { (l, r) } else { (best_l, best) })
        .0;
    Ok(EntropyProfile { rates, argmin })
}
