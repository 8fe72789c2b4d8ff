//! Information and complexity measures. All entropies are in bits.

mod entropy;
mod features;
mod lz;

use thiserror::Error;

pub use entropy::{
    block_entropy, entropy_of_counts, entropy_rate_profile, shannon_entropy, BlockMode, Distribution,
    EntropyProfile,
};
pub use features::{
    adjacency_entropy, clustering_coefficient, degree_histogram, degree_sequence_entropy, graph_entropy,
    transitivity, EntropyReport, Feature,
};
pub use lz::{lz_complexity, LzComplexity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("sequence is empty")]
    EmptySequence,
    #[error("block length {block} invalid for sequence of length {len}")]
    BlockLength { block: usize, len: usize },
    #[error("measure needs at least 2 nodes, graph has {0}")]
    TooFewNodes(usize),
    #[error("unknown feature {0:?}; expected adjacency, degree-sequence, block:L, compression or clustering")]
    UnknownFeature(String),
}
