//! `hamsub`: exact Hamiltonian-subset counting, closed-form evaluation,
//! expander certification/extraction, structure builders, and exhaustive
//! desk-scale verification over graph6 streams. JSON out, deterministic
//! given config + input + seed.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde_json::json;

use hamsub::config::RunConfig;
use hamsub::{enumerate, io, report, runner};
use hamsub_core::counting::{self, CountOptions};
use hamsub_core::expander::{self, CertRequest, ExpansionProfile};
use hamsub_core::graph::{Graph, Vertex};
use hamsub_core::structures::{
    build_cycle_dense, build_cycle_sparse, far_apart_set, find_structure, grow_webs,
    DenseCycleParams, SparseCycleParams, WebBuildParams,
};
use hamsub_core::verify::{self, VerificationReport};
use hamsub_core::{classical, construct, graph6, random};

#[derive(Parser)]
#[command(name = "hamsub", version, about = "Hamiltonian subset counting and expander structure toolkit")]
struct Cli {
    /// key=value config file mirrored by the flags below
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Subset-DP cap on n (default 24)
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Cycle-census cap on n (default 20; memory grows as n * 2^n)
    #[arg(long, global = true)]
    nu_cap: Option<usize>,
    #[arg(long, global = true)]
    eps1: Option<f64>,
    #[arg(long, global = true)]
    cprime: Option<f64>,
    /// Exit 1 when a verify subcommand finds violations
    #[arg(long, global = true)]
    strict: bool,
    /// Include wall-clock timing in verify reports (off keeps output
    /// byte-identical across runs)
    #[arg(long, global = true)]
    timing: bool,
    /// Emit JSON (the default and only output format)
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count Hamiltonian subsets per input graph
    Count {
        #[arg(long, default_value = "-")]
        input: String,
        /// Also compute the full cycle census
        #[arg(long)]
        nu: bool,
        /// Include the per-size histogram
        #[arg(long)]
        by_size: bool,
        /// Monte Carlo fallback: sample this many subsets instead of the
        /// exact DP (works above the cap; deterministic given --seed)
        #[arg(long)]
        estimate: Option<u64>,
    },
    /// Count subsets spanning an x,y-path per input graph
    Pxy {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        x: Vertex,
        #[arg(long)]
        y: Vertex,
    },
    /// Evaluate the closed forms at degree d
    Formulas {
        #[arg(long)]
        d: u64,
    },
    /// Degree-sequence Hamiltonicity test, density core, longest cycle
    Analyze {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Certify the expansion property per input graph
    Certify {
        #[arg(long, default_value = "-")]
        input: String,
        /// Explicit profile threshold t (default c' * d(G))
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
    },
    /// Extract an expander subgraph with verified postconditions
    ExtractExpander {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Find two cycles, a long path, or a sun at target degree d
    FindStructure {
        #[arg(long, default_value = "-")]
        input: String,
        /// Target degree, an integer or a fraction like 33/2
        #[arg(long)]
        d: String,
    },
    /// Grow webs with disjoint interiors on each input graph
    BuildWeb {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        h0: usize,
        #[arg(long)]
        h1: usize,
        #[arg(long)]
        h2: usize,
        #[arg(long)]
        h3: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Build a cycle through prescribed cores (dense webs or sparse balls)
    BuildCycle {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        mode: CycleModeArg,
        /// dense: web shape; sparse ignores these
        #[arg(long, default_value_t = 2)]
        h0: usize,
        #[arg(long, default_value_t = 2)]
        h1: usize,
        #[arg(long, default_value_t = 3)]
        h2: usize,
        #[arg(long, default_value_t = 4)]
        h3: usize,
        /// dense: number of webs to grow; sparse: size of the far-apart set
        #[arg(long, default_value_t = 6)]
        z_size: usize,
        /// cores the cycle must visit
        #[arg(long, default_value_t = 4)]
        u_size: usize,
        /// connecting-path budget in vertices
        #[arg(long, default_value_t = 24)]
        budget: usize,
        /// sparse: gate-ball radius r
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// sparse: connector-ball radius k
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// sparse: minimum fresh-ball size before each step
        #[arg(long, default_value_t = 3)]
        gate: usize,
    },
    /// Emit constructor output as graph6
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Check c(G) >= c(K_{d+1}) over a stream of graphs with delta >= d
    VerifyKomlos {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        d: u64,
        /// Also write per-graph counts as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check c(G) >= c(K_{d,d}) over bipartite graphs with delta >= d
    VerifyBipartite {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Flag non-extremal graphs with c below (2 - alpha) 2^{d+1}
    VerifyStability {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Heuristic,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum CycleModeArg {
    Dense,
    Sparse,
}

#[derive(Subcommand)]
enum GenCmd {
    Complete { n: usize },
    Bipartite { a: usize, b: usize },
    Cycle { n: usize },
    Path { n: usize },
    /// K_{d+1} * K_d
    Glued { d: usize },
    /// The four average-degree-d gluings
    Figure1 { d: usize },
    /// (a, b)-sun; rays as comma-separated 1-based cycle positions
    Sun { a: usize, rays: String },
    Gnp { n: usize, p: f64 },
    Regular { n: usize, k: usize },
    /// Isomorph-free graphs on n <= 9 vertices (one graph6 line per class)
    Stream {
        n: usize,
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
    },
}

fn parse_ratio(text: &str) -> anyhow::Result<Ratio<i64>> {
    if let Some((num, den)) = text.split_once('/') {
        Ok(Ratio::new(num.trim().parse()?, den.trim().parse()?))
    } else {
        Ok(Ratio::from_integer(text.trim().parse()?))
    }
}

fn header(cfg: &RunConfig) -> String {
    json!({ "type": "header", "tool": "hamsub", "config": cfg.to_json() }).to_string()
}

fn emit(line: serde_json::Value) {
    println!("{line}");
}

/// Streams graphs through `per_graph`, printing one JSON object per line;
/// decode failures become error objects and the stream continues.
fn for_each_graph(
    input: &str,
    cfg: &RunConfig,
    per_graph: impl Fn(&str, &Graph) -> serde_json::Value + Sync,
) -> anyhow::Result<()> {
    let items = io::read_input(input)?;
    println!("{}", header(cfg));
    let lines = runner::run_sharded(&items, cfg.threads, |item| match &item.graph {
        Ok(g) => per_graph(&item.text, g).to_string(),
        Err(e) => {
            json!({ "type": "error", "line": item.line, "graph6": item.text, "error": e.to_string() })
                .to_string()
        }
    });
    let mut out = std::io::stdout().lock();
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn count_error(g6: &str, e: &counting::CountError) -> serde_json::Value {
    json!({ "type": "error", "graph6": g6, "error": e.to_string() })
}

fn profile_for(g: &Graph, cfg: &RunConfig, t_override: Option<f64>) -> ExpansionProfile {
    let t = t_override.unwrap_or_else(|| {
        let d = g.average_degree();
        (cfg.cprime * *d.numer() as f64 / *d.denom() as f64).max(f64::MIN_POSITIVE)
    });
    ExpansionProfile::new(cfg.eps1, t)
}

type VerifyOutcome = (VerificationReport, Vec<(String, serde_json::Value)>);

/// Shards a stream through a per-graph check, merging the shard reports in
/// input order so worker count never changes the result.
fn run_verification(
    items: &[io::StreamItem],
    threads: usize,
    check: impl Fn(&Graph) -> Result<verify::GraphCheck, counting::CountError> + Sync,
) -> VerifyOutcome {
    let shards = runner::run_sharded(items, threads, |item| {
        let mut rep = VerificationReport::default();
        let mut rows = Vec::new();
        match &item.graph {
            Err(e) => rep.record_parse_failure(item.line, e.to_string()),
            Ok(g) => match check(g) {
                Err(e) => rep.record_parse_failure(item.line, e.to_string()),
                Ok(chk) => {
                    rep.record(g, &chk);
                    let c = chk.c.as_ref().map(report::big).unwrap_or(serde_json::Value::Null);
                    rows.push((
                        item.text.clone(),
                        json!({ "n": g.n(), "e": g.e(), "c": c, "outcome": outcome_name(&chk.outcome) }),
                    ));
                }
            },
        }
        (rep, rows)
    });
    let mut merged = VerificationReport::default();
    let mut rows = Vec::new();
    for (rep, mut shard_rows) in shards {
        merged = merged.merge(rep);
        rows.append(&mut shard_rows);
    }
    (merged, rows)
}

fn outcome_name(o: &verify::CheckOutcome) -> &'static str {
    use verify::{CheckOutcome::*, SkipReason::*};
    match o {
        Violation => "violation",
        Equality => "equality",
        Above => "above",
        Skipped(MinDegree) => "skipped_min_degree",
        Skipped(NotBipartite) => "skipped_not_bipartite",
        Skipped(AverageDegree) => "skipped_average_degree",
        Skipped(Exception) => "exception",
    }
}

fn write_csv(path: &PathBuf, rows: &[(String, serde_json::Value)]) -> anyhow::Result<()> {
    let mut f = std::fs::File::create(path)?;
    writeln!(f, "graph6,n,e,c,outcome")?;
    for (g6, row) in rows {
        writeln!(
            f,
            "{},{},{},{},{}",
            g6,
            row["n"],
            row["e"],
            row["c"].as_u64().map_or_else(|| row["c"].to_string(), |v| v.to_string()),
            row["outcome"].as_str().unwrap_or(""),
        )?;
    }
    Ok(())
}

fn finish_verification(
    kind: &str,
    d: u64,
    mut rep: VerificationReport,
    rows: Vec<(String, serde_json::Value)>,
    csv: Option<PathBuf>,
    cfg: &RunConfig,
    started: Option<std::time::Instant>,
) -> anyhow::Result<i32> {
    rep.finalize();
    rep.elapsed_ms = started.map(|s| s.elapsed().as_millis() as u64);
    let mut doc = report::verification(kind, d, &rep);
    doc["config"] = cfg.to_json();
    emit(doc);
    if let Some(path) = csv {
        write_csv(&path, &rows).context("writing CSV")?;
    }
    Ok(if cfg.strict && !rep.violations.is_empty() { 1 } else { 0 })
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path).context("reading config file")?;
    }
    if let Some(v) = cli.threads {
        cfg.threads = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.cap {
        cfg.cap = v;
    }
    if let Some(v) = cli.nu_cap {
        cfg.nu_cap = v;
    }
    if let Some(v) = cli.eps1 {
        cfg.eps1 = v;
    }
    if let Some(v) = cli.cprime {
        cfg.cprime = v;
    }
    cfg.strict |= cli.strict;
    cfg.timing |= cli.timing;
    cfg.json |= cli.json;
    let code = dispatch(cli.cmd, &cfg)?;
    std::process::exit(code);
}

fn dispatch(cmd: Cmd, cfg: &RunConfig) -> anyhow::Result<i32> {
    let opts: CountOptions = cfg.count_options();
    match cmd {
        Cmd::Count { input, nu, by_size, estimate } => {
            for_each_graph(&input, cfg, |g6, g| {
                if let Some(samples) = estimate {
                    let est = counting::ham_fraction_estimate(g, samples, cfg.seed);
                    return json!({
                        "graph6": g6,
                        "n": g.n(),
                        "e": g.e(),
                        "estimate": {
                            "hits": est.hits,
                            "samples": est.samples,
                            "undecided": est.undecided,
                            "fraction": est.value_f64(),
                            "half_width": est.half_width,
                        },
                    });
                }
                match counting::ham_subsets_count(g, &opts) {
                    Err(e) => count_error(g6, &e),
                    Ok(mut rep) => {
                        if nu {
                            match counting::count_all_cycles(g, &opts) {
                                Ok(v) => rep.nu = Some(v),
                                Err(e) => return count_error(g6, &e),
                            }
                        }
                        report::count_report(g6, &rep, by_size)
                    }
                }
            })?;
            Ok(0)
        }
        Cmd::Pxy { input, x, y } => {
            for_each_graph(&input, cfg, |g6, g| {
                match counting::path_subsets_count(g, x, y, &opts) {
                    Ok(p) => report::path_count(g6, &p),
                    Err(e) => count_error(g6, &e),
                }
            })?;
            Ok(0)
        }
        Cmd::Formulas { d } => {
            emit(json!({
                "config": cfg.to_json(),
                "d": d,
                "complete": report::big(&counting::closed_form_complete(d)),
                "glued": report::big(&counting::closed_form_glued(d)),
                "bipartite_dd": report::big(&counting::closed_form_bipartite(d, d)),
                "tuza_floor": report::big(&counting::tuza_floor(d)),
            }));
            Ok(0)
        }
        Cmd::Analyze { input } => {
            for_each_graph(&input, cfg, |g6, g| {
                let posa = classical::posa_check(g)
                    .map(|v| json!({ "passes": v.passes, "witness_index": v.witness_index }))
                    .unwrap_or_else(|e| json!({ "error": e.to_string() }));
                let cycle = match classical::longest_cycle(g, cfg.cap) {
                    Ok(c) => json!(c),
                    Err(e) => json!({ "error": e.to_string() }),
                };
                let d = g.average_degree();
                let core_doc = if d > Ratio::new(0, 1) {
                    let (core, _) = classical::min_degree_core(g, d);
                    json!({ "order": core.n(), "average_degree": report::rational(core.average_degree()) })
                } else {
                    json!(null)
                };
                let stats = g.degree_stats().ok();
                json!({
                    "graph6": g6,
                    "n": g.n(),
                    "e": g.e(),
                    "average_degree": report::rational(d),
                    "degrees": stats.map(|s| json!({
                        "min": s.min,
                        "second_min": s.second_min,
                        "max": s.max,
                    })),
                    "posa": posa,
                    "longest_cycle": cycle,
                    "core": core_doc,
                })
            })?;
            Ok(0)
        }
        Cmd::Certify { input, t, mode } => {
            for_each_graph(&input, cfg, |g6, g| {
                let profile = profile_for(g, cfg, t);
                let req = match mode {
                    ModeArg::Exact => CertRequest::Exact,
                    ModeArg::Heuristic => CertRequest::Heuristic { seed: cfg.seed },
                    ModeArg::Auto => CertRequest::Auto { seed: cfg.seed },
                };
                match expander::is_expander(g, &profile, req) {
                    Ok(cert) => report::certificate(g6, &cert),
                    Err(e) => json!({ "type": "error", "graph6": g6, "error": e.to_string() }),
                }
            })?;
            Ok(0)
        }
        Cmd::ExtractExpander { input } => {
            for_each_graph(&input, cfg, |g6, g| {
                match expander::extract_expander(g, cfg.eps1, cfg.cprime, cfg.seed) {
                    Ok(r) => report::extraction(g6, &r),
                    Err(e) => json!({ "type": "error", "graph6": g6, "error": e.to_string() }),
                }
            })?;
            Ok(0)
        }
        Cmd::FindStructure { input, d } => {
            let d = parse_ratio(&d)?;
            for_each_graph(&input, cfg, |g6, g| match find_structure(g, d, cfg.cap) {
                Ok(w) => report::witness(g6, &w),
                Err(e) => json!({ "type": "error", "graph6": g6, "error": e.to_string() }),
            })?;
            Ok(0)
        }
        Cmd::BuildWeb { input, h0, h1, h2, h3, count } => {
            for_each_graph(&input, cfg, |g6, g| {
                let harvest =
                    grow_webs(g, h0, h1, h2, h3, count, &WebBuildParams::desk(h0, h1, h2, h3));
                json!({
                    "graph6": g6,
                    "requested": count,
                    "webs": harvest.webs.iter().map(report::web).collect::<Vec<_>>(),
                    "failures": harvest.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                })
            })?;
            Ok(0)
        }
        Cmd::BuildCycle { input, mode, h0, h1, h2, h3, z_size, u_size, budget, r, k, gate } => {
            for_each_graph(&input, cfg, |g6, g| match mode {
                CycleModeArg::Dense => {
                    let harvest =
                        grow_webs(g, h0, h1, h2, h3, z_size, &WebBuildParams::desk(h0, h1, h2, h3));
                    if harvest.webs.len() < u_size.max(2) {
                        return json!({
                            "graph6": g6,
                            "type": "error",
                            "error": format!("grew {} webs, need {}", harvest.webs.len(), u_size.max(2)),
                            "failures": harvest.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        });
                    }
                    let u: Vec<usize> = (0..u_size).collect();
                    let rep =
                        build_cycle_dense(g, &harvest.webs, &u, &DenseCycleParams::desk(budget));
                    let mut doc = report::cycle_build(&rep);
                    doc["graph6"] = json!(g6);
                    doc["mode"] = json!("dense");
                    doc
                }
                CycleModeArg::Sparse => {
                    let fa = far_apart_set(g, k, z_size);
                    if fa.set.len() < u_size.max(2) {
                        return json!({
                            "graph6": g6,
                            "type": "error",
                            "error": format!("far-apart set saturated at {} of {}", fa.set.len(), z_size),
                        });
                    }
                    let u: Vec<Vertex> = fa.set[..u_size].to_vec();
                    let params = SparseCycleParams::desk(r, k, budget, gate);
                    let profile = profile_for(g, cfg, None);
                    let rep = build_cycle_sparse(g, &fa.set, &u, &params, &profile);
                    let mut doc = report::cycle_build(&rep);
                    doc["graph6"] = json!(g6);
                    doc["mode"] = json!("sparse");
                    doc
                }
            })?;
            Ok(0)
        }
        Cmd::Gen { what } => {
            let graphs: Vec<Graph> = match what {
                GenCmd::Complete { n } => vec![construct::complete(n)],
                GenCmd::Bipartite { a, b } => vec![construct::complete_bipartite(a, b)],
                GenCmd::Cycle { n } => vec![construct::cycle(n)?],
                GenCmd::Path { n } => vec![construct::path(n)?],
                GenCmd::Glued { d } => vec![construct::glue_at_vertex(
                    &construct::complete(d + 1),
                    0,
                    &construct::complete(d),
                    0,
                )?],
                GenCmd::Figure1 { d } => construct::figure1_family(d),
                GenCmd::Sun { a, rays } => {
                    let idx: Vec<usize> = rays
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<_, _>>()
                        .context("ray positions")?;
                    vec![construct::sun(a, &idx)?.0]
                }
                GenCmd::Gnp { n, p } => vec![random::gnp(n, p, cfg.seed)],
                GenCmd::Regular { n, k } => {
                    vec![random::random_regular(n, k, cfg.seed).map_err(anyhow::Error::msg)?]
                }
                GenCmd::Stream { n, min_degree } => enumerate::isomorph_free_stream(n, min_degree)?,
            };
            let mut out = std::io::stdout().lock();
            for g in &graphs {
                writeln!(out, "{}", graph6::encode(g))?;
            }
            Ok(0)
        }
        Cmd::VerifyKomlos { input, d, csv } => {
            let started = cfg.timing.then(std::time::Instant::now);
            let items = io::read_input(&input)?;
            let (rep, rows) =
                run_verification(&items, cfg.threads, |g| verify::check_komlos(g, d, &opts));
            finish_verification("komlos", d, rep, rows, csv, cfg, started)
        }
        Cmd::VerifyBipartite { input, d, csv } => {
            let started = cfg.timing.then(std::time::Instant::now);
            let items = io::read_input(&input)?;
            let (rep, rows) =
                run_verification(&items, cfg.threads, |g| verify::check_bipartite(g, d, &opts));
            finish_verification("bipartite", d, rep, rows, csv, cfg, started)
        }
        Cmd::VerifyStability { input, d, alpha, csv } => {
            let started = cfg.timing.then(std::time::Instant::now);
            let alpha = BigRational::from_float(alpha)
                .ok_or_else(|| anyhow::anyhow!("alpha must be finite"))?;
            anyhow::ensure!(
                alpha > BigRational::from_integer(BigInt::from(0))
                    && alpha <= BigRational::from_integer(BigInt::from(1)),
                "alpha in (0, 1]"
            );
            let items = io::read_input(&input)?;
            let (rep, rows) = run_verification(&items, cfg.threads, |g| {
                verify::check_stability(g, d, &alpha, &opts)
            });
            finish_verification("stability", d, rep, rows, csv, cfg, started)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("16").unwrap(), Ratio::from_integer(16));
        assert_eq!(parse_ratio("33/2").unwrap(), Ratio::new(33, 2));
        assert!(parse_ratio("x").is_err());
    }
}
