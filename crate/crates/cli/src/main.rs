use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use entropy_mirage::digits::{
    binarize, champernowne_digits, load_digit_file, pi_digits_with, prng_digits, DigitStream, PiOptions,
};
use entropy_mirage::experiments::{
    run_ba_vs_er, run_compression_vs_entropy, run_density_entropy_equality, run_omega_graph,
    run_pi_histogram, run_zk_divergence, run_zk_growth, ExperimentKind, ExperimentReport, OmegaSource,
    PiHistogramConfig,
};
use entropy_mirage::generators::{
    ba_graph, digit_graph, er_graph, regular_ring_graph, targeted_degree_sequence, zk_graph, zk_graph_randomized,
    DigitGraphMode,
};
use entropy_mirage::graph::{read_edge_list, realize_graph, write_edge_list, Graph};
use entropy_mirage::measures::{entropy_of_counts, graph_entropy, Feature};

const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "entropy-mirage", version, about = "Entropy-deceiving graphs and the measures they fool")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a graph and write it as an edge list.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        /// Output file; stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Compute one feature-relative measure of an edge-list graph.
    Measure(MeasureArgs),
    /// Emit or inspect digit streams.
    Digits {
        #[command(subcommand)]
        action: DigitsAction,
    },
    /// Run a seeded experiment and write CSV/JSON (and optionally SVG).
    Experiment(ExperimentArgs),
}

#[derive(Debug, Subcommand)]
enum GenerateKind {
    Zk {
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        randomized: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    DigitGraph {
        /// pi, champernowne or file:PATH
        #[arg(long)]
        source: String,
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Layout::Upper)]
        layout: Layout,
        /// Reference pi digit file, needed beyond the compute budget.
        #[arg(long)]
        pi_reference: Option<PathBuf>,
    },
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Ring {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Targeted {
        #[arg(long)]
        n: usize,
        /// Target degree-sequence entropy in bits.
        #[arg(long)]
        entropy: f64,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Layout {
    /// n(n-1)/2 digits fill the upper triangle row by row.
    Upper,
    /// n^2 digits read as a full matrix; the upper triangle is used.
    Full,
}

impl From<Layout> for DigitGraphMode {
    fn from(l: Layout) -> Self {
        match l {
            Layout::Upper => DigitGraphMode::UpperTriangle,
            Layout::Full => DigitGraphMode::FullMatrix,
        }
    }
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// adjacency, degree-sequence, block, compress or clustering
    #[arg(long)]
    feature: String,
    /// Block length for the block feature.
    #[arg(long = "L")]
    block: Option<usize>,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum DigitsAction {
    Emit {
        /// pi, champernowne or prng
        #[arg(long)]
        source: String,
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Map digits to bits (d >= base/2 becomes 1).
        #[arg(long)]
        binarize: bool,
        #[arg(long)]
        pi_reference: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Inspect {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// One of: pi-histogram, density-entropy-equality, ba-vs-er, zk-growth,
    /// zk-divergence, compression-vs-entropy, omega-graph
    kind: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Attachment counts, comma separated.
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    replicates: usize,
    #[arg(long, default_value_t = 100)]
    t_max: usize,
    #[arg(long, default_value_t = 10_000)]
    digits: usize,
    #[arg(long, default_value_t = 10)]
    base: u32,
    #[arg(long, value_enum, default_value_t = Layout::Upper)]
    layout: Layout,
    #[arg(long)]
    pi_reference: Option<PathBuf>,
    /// Digit file holding Omega bits.
    #[arg(long)]
    omega_file: Option<PathBuf>,
    /// Use labelled prng bits when no Omega file is available.
    #[arg(long)]
    omega_standin: bool,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Check(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Check(m) => f.write_str(m),
        }
    }
}

fn input<E: fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Generate { kind, out } => generate(kind, out.as_deref()),
        Command::Measure(args) => measure(&args),
        Command::Digits { action } => digits(action),
        Command::Experiment(args) => experiment(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(input),
    }
}

fn load_reference(path: Option<&Path>) -> Result<Option<DigitStream>, Failure> {
    path.map(load_digit_file).transpose().map_err(input)
}

fn pi_stream(base: u32, count: usize, reference: Option<&Path>) -> Result<DigitStream, Failure> {
    let reference = load_reference(reference)?;
    let opts = PiOptions {
        budget: None,
        reference: reference.as_ref(),
    };
    pi_digits_with(base, count, &opts).map_err(input)
}

fn generate(kind: GenerateKind, out: Option<&Path>) -> Result<(), Failure> {
    let graph: Graph = match kind {
        GenerateKind::Zk { steps, randomized, seed } => {
            if randomized {
                zk_graph_randomized(steps, seed)
            } else {
                zk_graph(steps).graph
            }
        }
        GenerateKind::DigitGraph {
            source,
            base,
            n,
            layout,
            pi_reference,
        } => {
            let mode = DigitGraphMode::from(layout);
            let count = mode.digits_needed(n);
            let stream = match source.as_str() {
                "pi" => pi_stream(base, count, pi_reference.as_deref())?,
                "champernowne" => champernowne_digits(base, count).map_err(input)?,
                other => match other.strip_prefix("file:") {
                    Some(path) => load_digit_file(Path::new(path)).map_err(input)?,
                    None => return Err(Failure::Input(format!("unknown digit source {other:?}"))),
                },
            };
            digit_graph(&binarize(&stream), n, mode).map_err(input)?
        }
        GenerateKind::Er { n, p, seed } => er_graph(n, p, seed).map_err(input)?,
        GenerateKind::Ba { n, m, seed } => ba_graph(n, m, seed).map_err(input)?,
        GenerateKind::Ring { n, k } => regular_ring_graph(n, k).map_err(input)?,
        GenerateKind::Targeted { n, entropy, tol, seed } => {
            let seq = targeted_degree_sequence(n, entropy, tol, seed).map_err(input)?;
            let degrees: Vec<i64> = seq.degrees().iter().map(|&d| d as i64).collect();
            realize_graph(&degrees).map_err(input)?
        }
    };
    emit(&write_edge_list(&graph), out)
}

fn measure(args: &MeasureArgs) -> Result<(), Failure> {
    let feature = match (args.feature.as_str(), args.block) {
        ("block", Some(l)) => Feature::Block(l),
        ("block", None) => return Err(Failure::Input("feature block needs --L".into())),
        ("compress", _) => Feature::Compression,
        (name, _) => name.parse().map_err(input)?,
    };
    let graph = read_edge_list(&args.input).map_err(input)?;
    let report = graph_entropy(&graph, feature).map_err(input)?;
    let body = json!({
        "feature": report.feature,
        "value": report.value,
        "parameters": report.parameters,
        "provenance": format!("file:{}", args.input.display()),
    });
    println!("{}", serde_json::to_string_pretty(&body).map_err(input)?);
    Ok(())
}

fn digits(action: DigitsAction) -> Result<(), Failure> {
    match action {
        DigitsAction::Emit {
            source,
            base,
            count,
            seed,
            binarize: to_bits,
            pi_reference,
            out,
        } => {
            let stream = match source.as_str() {
                "pi" => pi_stream(base, count, pi_reference.as_deref())?,
                "champernowne" => champernowne_digits(base, count).map_err(input)?,
                "prng" => prng_digits(base, count, seed).map_err(input)?,
                other => return Err(Failure::Input(format!("unknown digit source {other:?}"))),
            };
            let stream = if to_bits { binarize(&stream) } else { stream };
            emit(&stream.to_file_string(), out.as_deref())
        }
        DigitsAction::Inspect { input: path } => {
            let stream = load_digit_file(&path).map_err(input)?;
            let mut counts = vec![0usize; stream.base() as usize];
            for &d in stream.digits() {
                counts[d as usize] += 1;
            }
            let body = json!({
                "base": stream.base(),
                "count": stream.len(),
                "provenance": stream.provenance().to_string(),
                "digit_counts": counts,
                "symbol_entropy": entropy_of_counts(counts.iter().copied()),
            });
            println!("{}", serde_json::to_string_pretty(&body).map_err(input)?);
            Ok(())
        }
    }
}

fn experiment(args: &ExperimentArgs) -> Result<(), Failure> {
    let kind: ExperimentKind = args.kind.parse().map_err(input)?;
    let report: ExperimentReport = match kind {
        ExperimentKind::PiHistogram => {
            let cfg = PiHistogramConfig {
                digits_count: args.digits,
                base: args.base,
                n: args.n.unwrap_or(100),
                seed: args.seed,
                mode: args.layout.into(),
                reference: load_reference(args.pi_reference.as_deref())?,
            };
            run_pi_histogram(&cfg)
        }
        ExperimentKind::DensityEntropyEquality => {
            run_density_entropy_equality(args.n.unwrap_or(50), args.k.unwrap_or(4), args.seed)
        }
        ExperimentKind::BaVsEr => {
            let m = if args.m.is_empty() { vec![4, 5] } else { args.m.clone() };
            run_ba_vs_er(args.n.unwrap_or(50), &m, args.replicates, args.seed)
        }
        ExperimentKind::ZkGrowth => run_zk_growth(args.t_max),
        ExperimentKind::ZkDivergence => run_zk_divergence(args.t_max),
        ExperimentKind::CompressionVsEntropy => run_compression_vs_entropy(args.t_max, args.seed),
        ExperimentKind::OmegaGraph => {
            let source = match (&args.omega_file, args.omega_standin) {
                (Some(path), _) => OmegaSource::File(path.clone()),
                (None, true) => OmegaSource::Standin {
                    seed: args.seed,
                    bits: 64,
                },
                (None, false) => OmegaSource::None,
            };
            run_omega_graph(&source, args.n.unwrap_or(11))
        }
    }
    .map_err(input)?;

    let written = report.write_to(&args.out, args.svg).map_err(input)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    for f in &report.findings {
        println!("finding {}: measured {} ({})", f.id, f.measured, f.note);
    }
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(failed.join(", ")))
    }
}
