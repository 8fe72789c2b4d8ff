//! Seeded, desk-scale experiments.
//!
//! Every experiment is a pure function of its parameters and root seed and
//! produces an [`ExperimentReport`]: data rows (the CSV contract), summary
//! statistics, pass/fail checks, and findings. Findings record places where
//! simulation disagrees with a published claim; they are data, never test
//! failures.

mod report;
mod runs;
mod svg;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digits::DigitError;
use crate::generators::GeneratorError;
use crate::graph::GraphError;
use crate::measures::MeasureError;

pub use report::{Check, ExperimentReport, Finding, Row, CSV_HEADER};
pub use runs::{
    run_ba_vs_er, run_compression_vs_entropy, run_density_entropy_equality, run_omega_graph, run_pi_histogram,
    run_zk_divergence, run_zk_growth, OmegaSource, PiHistogramConfig,
};
pub use svg::render_svg;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(
        "no Omega digit file supplied: Omega bits are external data and are never generated; \
         pass a digit file ('# base=2' header, then bits) or request the labelled prng stand-in"
    )]
    MissingOmegaFile,
    #[error(transparent)]
    Digit(#[from] DigitError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    PiHistogram,
    DensityEntropyEquality,
    BaVsEr,
    ZkGrowth,
    ZkDivergence,
    CompressionVsEntropy,
    OmegaGraph,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::PiHistogram,
        ExperimentKind::DensityEntropyEquality,
        ExperimentKind::BaVsEr,
        ExperimentKind::ZkGrowth,
        ExperimentKind::ZkDivergence,
        ExperimentKind::CompressionVsEntropy,
        ExperimentKind::OmegaGraph,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::PiHistogram => "pi-histogram",
            ExperimentKind::DensityEntropyEquality => "density-entropy-equality",
            ExperimentKind::BaVsEr => "ba-vs-er",
            ExperimentKind::ZkGrowth => "zk-growth",
            ExperimentKind::ZkDivergence => "zk-divergence",
            ExperimentKind::CompressionVsEntropy => "compression-vs-entropy",
            ExperimentKind::OmegaGraph => "omega-graph",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| ExperimentError::InvalidParameters(format!("unknown experiment kind {s:?}")))
    }
}
