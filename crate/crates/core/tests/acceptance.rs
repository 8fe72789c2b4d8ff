//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use entropy_mirage::digits::prng_digits;
use entropy_mirage::experiments::{
    run_ba_vs_er, run_compression_vs_entropy, run_density_entropy_equality, run_pi_histogram, run_zk_divergence,
    run_zk_growth, ExperimentReport, PiHistogramConfig,
};
use entropy_mirage::generators::{
    er_graph_exact, zk_edge_count_formula, zk_graph, zk_graph_randomized, ZkGrowth,
};
use entropy_mirage::graph::{canonical_form, is_graphical, write_edge_list, Graph};
use entropy_mirage::measures::{block_entropy, lz_complexity, BlockMode};
use entropy_mirage::rng::{derive_seed, rng_from_seed};
use rand::seq::SliceRandom;

const ROOT_SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn checks_passed(report: &ExperimentReport, names: &[&str]) -> Result<(), String> {
    for name in names {
        let check = report
            .checks
            .iter()
            .find(|c| c.name == *name)
            .ok_or_else(|| format!("missing check {name}"))?;
        ensure(check.passed, format!("{name}: {}", check.detail))?;
    }
    Ok(())
}

fn zk_edge_counts() -> Outcome {
    let expected = [1, 2, 4, 7, 10, 14, 18, 23, 29, 35, 42, 50, 58, 67, 76, 86, 97, 108, 120, 132, 145];
    let got: Vec<usize> = (0..expected.len()).map(|t| zk_graph(t).graph.edge_count()).collect();
    ensure(got == expected, format!("got {got:?}"))?;
    Ok("t = 0..=20 match the 21 listed counts".into())
}

fn formula_agreement() -> Outcome {
    let mut growth = ZkGrowth::new();
    for t in 0..=200 {
        if t > 0 {
            growth.step();
        }
        let simulated = growth.edge_count() as u128;
        ensure(simulated == zk_edge_count_formula(t), format!("t={t}: simulated {simulated}"))?;
    }
    Ok("t = 0..=200".into())
}

fn degree_multiplicity() -> Outcome {
    let mut growth = ZkGrowth::new();
    let mut worst = 0;
    for t in 0..=200 {
        if t > 0 {
            growth.step();
        }
        let g = growth.graph();
        let max = g.max_degree();
        let mult = (1..=g.node_count()).filter(|&v| g.degree(v) == max).count();
        worst = worst.max(mult);
        ensure(mult <= 3, format!("t={t}: multiplicity {mult}"))?;
    }
    Ok(format!("largest multiplicity {worst} over t <= 200"))
}

fn randomized_isomorphic() -> Outcome {
    for t in 0..=8 {
        let reference = canonical_form(&zk_graph(t).graph).map_err(|e| e.to_string())?;
        for s in 0..20 {
            let g = zk_graph_randomized(t, derive_seed(ROOT_SEED, s));
            let form = canonical_form(&g).map_err(|e| e.to_string())?;
            ensure(form == reference, format!("t={t}, seed stream {s}: canonical form differs"))?;
        }
    }
    Ok("20 seeds at each t <= 8 share one canonical form".into())
}

fn block_entropy_example() -> Outcome {
    let s: Vec<u8> = "01010101010101".bytes().map(|b| b - b'0').collect();
    let h1 = block_entropy(&s, 1, BlockMode::NonOverlapping).map_err(|e| e.to_string())?;
    let h2 = block_entropy(&s, 2, BlockMode::NonOverlapping).map_err(|e| e.to_string())?;
    ensure((h1 - 1.0).abs() <= 1e-12 && h2.abs() <= 1e-12, format!("H1={h1}, H2={h2}"))?;
    Ok(format!("H1={h1}, H2={h2}"))
}

fn density_entropy_equality() -> Outcome {
    let r = run_density_entropy_equality(50, 4, ROOT_SEED).map_err(|e| e.to_string())?;
    checks_passed(&r, &["adjacency-entropies-equal", "ring-degree-entropy-zero", "er-degree-entropy-positive"])?;
    let er = r.series("er/degree_entropy")[0].1;
    Ok(format!("adjacency gap {}, E-R degree entropy {er:.4}", r.summary["adjacency_entropy_gap"]))
}

fn ba_vs_er() -> Outcome {
    let r = run_ba_vs_er(50, &[4, 5], 10, ROOT_SEED).map_err(|e| e.to_string())?;
    let detail = format!(
        "medians m=4 B-A {:.3} vs E-R {:.3}, m=5 B-A {:.3} vs E-R {:.3}",
        r.summary["ba.m=4.median"], r.summary["er.m=4.median"], r.summary["ba.m=5.median"], r.summary["er.m=5.median"]
    );
    checks_passed(&r, &["ba-median-ge-er-median/m=4", "ba-median-ge-er-median/m=5"]).map_err(|_| detail.clone())?;
    Ok(detail)
}

fn zk_divergence() -> Outcome {
    let r = run_zk_divergence(100).map_err(|e| e.to_string())?;
    checks_passed(&r, &["degree-entropy-non-decreasing", "degree-entropy-above-log2-n-over-3"])?;
    ensure(!r.series("adjacency_entropy").is_empty() && !r.series("edge_density").is_empty(), "curves missing")?;
    let ids: HashSet<&str> = r.findings.iter().map(|f| f.id.as_str()).collect();
    ensure(ids.contains("adjacency-entropy-limit") && ids.contains("edge-density-limit"), "limit findings missing")?;
    Ok(format!(
        "degree entropy {:.4} at t=100; H(Adj) {:.4} and density {:.4} recorded as findings",
        r.summary["degree_entropy_final"], r.summary["adjacency_entropy_final"], r.summary["edge_density_final"]
    ))
}

fn clustering_convergence() -> Outcome {
    let r = run_zk_growth(100).map_err(|e| e.to_string())?;
    checks_passed(&r, &["clustering-converged"])?;
    let c = r.summary["clustering_final"];
    let band = if (c - 0.65).abs() <= 0.1 { "inside" } else { "outside" };
    Ok(format!(
        "|c(100)-c(90)| = {:.5}; c(100) = {c:.4}, {band} 0.65 +/- 0.1 (transitivity {:.4})",
        r.summary["clustering_drift_10"], r.summary["transitivity_final"]
    ))
}

fn pi_graph() -> Outcome {
    let cfg = PiHistogramConfig {
        seed: ROOT_SEED,
        ..PiHistogramConfig::default()
    };
    let r = run_pi_histogram(&cfg).map_err(|e| e.to_string())?;
    let density = r.summary["pi.density"];
    let h = r.summary["pi.degree_entropy"];
    ensure((0.45..=0.55).contains(&density), format!("density {density}"))?;
    ensure(h < 5.0, format!("degree entropy {h}"))?;
    checks_passed(&r, &["pi-within-3-sigma", "pi-unimodal-sigma-bins"])?;
    Ok(format!("density {density:.5}, degree entropy {h:.4} bits"))
}

fn graphical_oracle() -> Outcome {
    let mut checked = 0usize;
    for len in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (0..len).flat_map(|u| (u + 1..len).map(move |v| (u, v))).collect();
        let mut realizable = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let mut deg = vec![0i64; len];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            realizable.insert(deg);
        }
        let mut seq = vec![0i64; len];
        loop {
            let fast = is_graphical(&seq).map_err(|e| e.to_string())?;
            ensure(fast == realizable.contains(&seq), format!("{seq:?}: is_graphical says {fast}"))?;
            checked += 1;
            let Some(i) = seq.iter().position(|&d| d < 6) else { break };
            seq[i] += 1;
            seq[..i].iter_mut().for_each(|d| *d = 0);
        }
    }
    Ok(format!("{checked} sequences agree with exhaustive enumeration"))
}

fn canonical_bits(g: &Graph) -> Result<Vec<u8>, String> {
    Ok(canonical_form(g).map_err(|e| e.to_string())?.bytes().map(|b| b - b'0').collect())
}

fn compression_ordering() -> Outcome {
    let r = run_compression_vs_entropy(50, ROOT_SEED).map_err(|e| e.to_string())?;
    let at = |series: &str| r.series(series).into_iter().find(|p| p.0 == 50.0).map(|p| p.1).unwrap_or(f64::NAN);
    let (c, z, x) = (at("constant/lz_compressed_bits"), at("zk/lz_compressed_bits"), at("random/lz_compressed_bits"));
    ensure(c < z && z < x, format!("t=50: constant {c}, zk {z}, random {x}"))?;

    let mut graphs: Vec<Graph> = (0..=5).map(|t| zk_graph(t).graph).collect();
    for n in 4..=10usize {
        let cells = n * (n - 1) / 2;
        for m in [cells / 4, cells / 2] {
            graphs.push(er_graph_exact(n, m, derive_seed(ROOT_SEED, (n * 100 + m) as u64)).map_err(|e| e.to_string())?);
        }
    }
    let mut rng = rng_from_seed(ROOT_SEED);
    for g in &graphs {
        ensure(g.node_count() <= 10, "graph too large")?;
        let reference = lz_complexity(&canonical_bits(g)?).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let mut perm: Vec<usize> = (1..=g.node_count()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).map_err(|e| e.to_string())?;
            let lz = lz_complexity(&canonical_bits(&h)?).map_err(|e| e.to_string())?;
            ensure(lz == reference, format!("relabelling changed canonical LZ on {} nodes", g.node_count()))?;
        }
    }
    Ok(format!("t=50 bits {c} < {z} < {x}; {} graphs x 10 relabellings invariant", graphs.len()))
}

fn stochastic_csv(seed: u64) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let e = |e: entropy_mirage::experiments::ExperimentError| e.to_string();
    out.push(run_density_entropy_equality(50, 4, seed).map_err(e)?.to_csv());
    out.push(run_ba_vs_er(50, &[4, 5], 10, seed).map_err(e)?.to_csv());
    out.push(run_compression_vs_entropy(50, seed).map_err(e)?.to_csv());
    let cfg = PiHistogramConfig {
        seed,
        ..PiHistogramConfig::default()
    };
    out.push(run_pi_histogram(&cfg).map_err(e)?.to_csv());
    out.push(prng_digits(10, 1000, seed).map_err(|e| e.to_string())?.to_file_string());
    for t in 0..=8 {
        out.push(write_edge_list(&zk_graph_randomized(t, derive_seed(seed, t as u64))));
    }
    Ok(out)
}

fn reproducibility() -> Outcome {
    let first = stochastic_csv(ROOT_SEED)?;
    let second = stochastic_csv(ROOT_SEED)?;
    ensure(first == second, "repeated runs differ")?;
    let other = stochastic_csv(ROOT_SEED + 1)?;
    ensure(first != other, "a different root seed produced identical output")?;
    Ok(format!("{} stochastic outputs byte-identical across two runs", first.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "ZK edge counts", Duration::from_secs(1), zk_edge_counts),
        (2, "edge-count formula agreement", Duration::from_secs(1), formula_agreement),
        (3, "max degree multiplicity <= 3", Duration::from_secs(1), degree_multiplicity),
        (4, "randomized ZK isomorphic to deterministic", Duration::from_secs(10), randomized_isomorphic),
        (5, "block entropy example", Duration::from_secs(1), block_entropy_example),
        (6, "equal density, equal adjacency entropy", Duration::from_secs(1), density_entropy_equality),
        (7, "B-A vs E-R degree entropy direction", Duration::from_secs(5), ba_vs_er),
        (8, "ZK degree-entropy divergence", Duration::from_secs(5), zk_divergence),
        (9, "ZK clustering convergence", Duration::from_secs(5), clustering_convergence),
        (10, "pi digit graph", Duration::from_secs(5), pi_graph),
        (11, "graphical-sequence oracle", Duration::from_secs(30), graphical_oracle),
        (12, "compression proxy ordering and invariance", Duration::from_secs(5), compression_ordering),
        (13, "seeded reproducibility", Duration::from_secs(30), reproducibility),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {id}: {name} ({elapsed:.2?}) {detail}");
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
