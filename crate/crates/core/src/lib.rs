//! Entropy-deceiving graph constructions and the measures they fool.
//!
//! The same graph admits several lossless descriptions (adjacency matrix,
//! degree sequence, canonical bit string). Shannon-type measures computed on
//! those descriptions disagree; this crate builds graphs that make the
//! disagreement extreme and provides the measures and seeded experiments
//! that expose it.
//!
//! * [`graph`]: graph type, descriptions, isomorphism, graphical sequences.
//! * [`digits`]: Champernowne, pi and file-supplied digit streams.
//! * [`generators`]: ZK growth, digit graphs, random baselines, targeted
//!   degree sequences.
//! * [`measures`]: Shannon/block entropy, graph entropies per feature,
//!   LZ78 compression proxy, clustering.
//! * [`experiments`]: seeded desk-scale experiments emitting CSV/JSON.

pub mod digits;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod measures;
pub mod rng;

pub use graph::{BitMatrix, DegreeSequence, Graph, GraphError};
