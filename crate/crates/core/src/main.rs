use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use resolvekit::graph::{all_pairs_distances, parse_edge_list, write_edge_list};
use resolvekit::harness::{
    emit_tables, hash_json, long_path_fraction, long_path_table, resolve_network, run_experiment, BenchConfig,
    ExperimentReport, Format, View, LONG_PATH_CAP,
};
use resolvekit::mine::mine_traced;
use resolvekit::resolve::{
    brute_force_beta, contiguous_members, greedy_baseline, ich, is_resolving, preorder_baseline, random_baseline,
    NodeSet, ResolvingTarget,
};
use resolvekit::sbm::{
    diam2_condition, diam_gt2_condition, er_any_set_size, er_beta_upper, estimate_params, expected_long_pairs,
    parse_labels, presets, sample, scale_communities, LabeledGraph, SbmParams,
};
use resolvekit::{Error, Graph, Result};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "resolvekit", version, about = "Resolving sets for stochastic block model graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph and write it as an edge list plus a labels file.
    Sample(SampleArgs),
    /// Size a random per-community resolving set with MINE.
    Mine(MineArgs),
    /// Find a resolving set for a graph read from an edge list.
    Resolve(ResolveArgs),
    /// Run an experiment suite and write its tables.
    Bench(BenchArgs),
    /// Closed-form resolvability and diameter bounds.
    Bounds(BoundsArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ParamSource {
    /// Bundled parameter set
    #[arg(long)]
    preset: Option<String>,
    /// JSON file with `community_sizes` and `P`
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalParamSource {
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    source: ParamSource,
    /// Rescale community sizes to this many vertices
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge list output path
    #[arg(long)]
    out: PathBuf,
    /// Labels output path (default: <out>.labels)
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    source: ParamSource,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    alpha: f64,
    /// Include the visited lattice points
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Ich,
    Greedy,
    Preorder,
    Random,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Astar,
    Dist,
    Adj,
}

#[derive(Args)]
struct ResolveArgs {
    /// Edge list, one `u v` pair per line
    edges: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "astar")]
    target: TargetArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex count, if the file has isolated vertices and no header
    #[arg(long)]
    n: Option<usize>,
    /// Community label per vertex, one per line
    #[arg(long)]
    labels: Option<PathBuf>,
    #[command(flatten)]
    source: OptionalParamSource,
    /// Vertex limit for exhaustive search and for ICH on distances
    #[arg(long, default_value_t = resolvekit::resolve::BRUTE_FORCE_CAP)]
    cap: usize,
    /// Permit ICH on the distance matrix (requires n <= cap)
    #[arg(long)]
    allow_dist_ich: bool,
}

#[derive(Args)]
struct BenchArgs {
    config: PathBuf,
    /// Override the configured target vertex count
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    p: Option<f64>,
    #[command(flatten)]
    source: OptionalParamSource,
    /// Constant of the diameter conditions: > 1 tests diameter ≤ 2, (0, 1) tests > 2
    #[arg(long = "C")]
    c_const: Option<f64>,
}

fn load_params(preset: &Option<String>, path: &Option<PathBuf>) -> Result<Option<(String, SbmParams)>> {
    match (preset, path) {
        (Some(key), _) => presets::find(key)
            .map(|p| Some((key.clone(), p.params())))
            .ok_or_else(|| Error::InvalidParams(format!("unknown preset {key:?}"))),
        (None, Some(path)) => Ok(Some((path.display().to_string(), SbmParams::from_json(&fs::read_to_string(path)?)?))),
        (None, None) => Ok(None),
    }
}

fn required_params(src: &ParamSource, n: Option<usize>) -> Result<(String, SbmParams)> {
    let (name, params) = load_params(&src.preset, &src.params)?.expect("clap enforces one source");
    match n {
        Some(n) => Ok((name, scale_communities(&params, n)?)),
        None => Ok((name, params)),
    }
}

fn emit(mut body: Value, config_hash: String, seed: Option<u64>) {
    let obj = body.as_object_mut().expect("object output");
    obj.insert("version".into(), json!(VERSION));
    obj.insert("config_hash".into(), json!(config_hash));
    obj.insert("seed".into(), json!(seed));
    println!("{}", serde_json::to_string_pretty(&body).expect("json output"));
}

fn cmd_sample(args: &SampleArgs) -> Result<()> {
    let (name, params) = required_params(&args.source, args.n)?;
    let g = sample(&params, args.seed);
    let labels_path = args.labels.clone().unwrap_or_else(|| {
        let mut p = args.out.clone().into_os_string();
        p.push(".labels");
        PathBuf::from(p)
    });
    let mut out = BufWriter::new(File::create(&args.out)?);
    write_edge_list(&g, &mut out)?;
    out.flush()?;
    let mut lab = BufWriter::new(File::create(&labels_path)?);
    for l in params.contiguous_labels() {
        writeln!(lab, "{l}")?;
    }
    lab.flush()?;
    let labeled = LabeledGraph::new(g.clone(), params.contiguous_labels())?;
    let est = estimate_params(&labeled)?;
    eprintln!("sampled {name}: n = {}, |E| = {}", g.n(), g.edge_count());
    let hashed = json!({"command": "sample", "params": params, "seed": args.seed});
    emit(
        json!({
            "n": g.n(),
            "edges": g.edge_count(),
            "community_sizes": params.sizes(),
            "block_densities": est.params.matrix(),
            "edge_list": args.out,
            "labels": labels_path,
        }),
        hash_json(&hashed),
        Some(args.seed),
    );
    Ok(())
}

fn cmd_mine(args: &MineArgs) -> Result<()> {
    let (name, params) = required_params(&args.source, args.n)?;
    let (sol, start, trace) = mine_traced(&params, args.alpha)?;
    eprintln!(
        "{name}: alpha = {} needs {} nodes {:?} (f = {:.6}, {} evaluations)",
        args.alpha,
        sol.size(),
        sol.allocation.entries(),
        sol.f_value,
        sol.evaluations
    );
    let hashed = json!({"command": "mine", "params": params, "alpha": args.alpha});
    let mut body = serde_json::to_value(&sol)?;
    body["size"] = json!(sol.size());
    body["community_sizes"] = json!(params.sizes());
    if args.trace {
        body["walk_start"] = json!(start);
        body["trace"] = serde_json::to_value(&trace)?;
    }
    emit(body, hash_json(&hashed), None);
    Ok(())
}

fn community_layout(args: &ResolveArgs, g: &Graph) -> Result<(SbmParams, Vec<Vec<u32>>)> {
    if let Some(path) = &args.labels {
        let labels = parse_labels(BufReader::new(File::open(path)?))?;
        let labeled = LabeledGraph::new(g.clone(), labels)?;
        let members = labeled.members();
        let params = match load_params(&args.source.preset, &args.source.params)? {
            Some((_, p)) if p.n() == g.n() => p,
            Some((_, p)) => scale_communities(&p, g.n())?,
            None => {
                let est = estimate_params(&labeled)?;
                for w in &est.warnings {
                    log::warn!("{w}");
                }
                est.params
            }
        };
        return Ok((params, members));
    }
    let (_, params) = load_params(&args.source.preset, &args.source.params)?
        .ok_or_else(|| Error::MalformedInput("greedy and preorder need --labels, --params or --preset".into()))?;
    let params = if params.n() == g.n() { params } else { scale_communities(&params, g.n())? };
    let members = contiguous_members(&params);
    Ok((params, members))
}

fn cmd_resolve(args: &ResolveArgs) -> Result<()> {
    let (g, report) = parse_edge_list(BufReader::new(File::open(&args.edges)?), args.n)?;
    if report.self_loops + report.duplicates > 0 {
        log::warn!("dropped {} self-loops and {} duplicate edges", report.self_loops, report.duplicates);
    }
    let n = g.n();
    let needs_dist = args.target == TargetArg::Dist;
    if needs_dist && matches!(args.method, MethodArg::Ich) && !(args.allow_dist_ich && n <= args.cap) {
        return Err(Error::SizeCap(format!("ICH on distances needs --allow-dist-ich and n <= {} (n = {n})", args.cap)));
    }
    let dist = needs_dist.then(|| all_pairs_distances(&g));
    let target = match (args.target, &dist) {
        (TargetArg::Dist, Some(d)) => ResolvingTarget::Distance(d),
        (TargetArg::Adj, _) => ResolvingTarget::Adjacency(&g),
        _ => ResolvingTarget::ModifiedAdjacency(&g),
    };
    let (method, set): (&str, NodeSet) = match args.method {
        MethodArg::Ich => ("ich", ich(&target)?),
        MethodArg::Brute => ("brute", brute_force_beta(&target, args.cap)?.1),
        MethodArg::Random => ("random", random_baseline(&g, args.seed)?),
        MethodArg::Greedy => {
            let (params, members) = community_layout(args, &g)?;
            ("greedy", greedy_baseline(&g, &params, &members, args.seed)?)
        }
        MethodArg::Preorder => {
            let (params, members) = community_layout(args, &g)?;
            ("preorder", preorder_baseline(&g, &params, &members)?)
        }
    };
    let verified = is_resolving(&target, &set);
    let label = target.kind().label();
    eprintln!("{method}: {} of {n} vertices resolve {label} (verified: {verified})", set.len());
    let randomized = matches!(args.method, MethodArg::Greedy | MethodArg::Random);
    let hashed = json!({"command": "resolve", "edges_hash": hash_json(&g.edges().collect::<Vec<_>>()),
        "n": n, "method": method, "target": label});
    emit(
        json!({
            "method": method,
            "set": set,
            "size": set.len(),
            "verified_against": label,
            "verified": verified,
        }),
        hash_json(&hashed),
        randomized.then_some(args.seed),
    );
    Ok(())
}

fn write_file(dir: &Path, name: String, text: &str, written: &mut Vec<String>) -> Result<()> {
    let path = dir.join(&name);
    fs::write(&path, text)?;
    written.push(path.display().to_string());
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let mut cfg = BenchConfig::from_json(&fs::read_to_string(&args.config)?)?;
    if args.n.is_some() {
        cfg.n_target = args.n;
    }
    let experiments = cfg.experiments()?;
    let hash = cfg.hash();
    let mut report = ExperimentReport::empty(&hash, cfg.base_seed);
    for ex in &experiments {
        eprintln!("running {} (n = {}, {} graphs)", ex.network, ex.params.n(), ex.n_graphs);
        report.absorb(run_experiment(ex)?);
    }
    let mut long = Vec::new();
    if let Some(spec) = &cfg.long_paths {
        for net in &cfg.networks {
            let (name, params) = resolve_network(net)?;
            let params = scale_communities(&params, spec.n)?;
            long.push(long_path_fraction(&name, &params, spec.n_graphs, cfg.base_seed, LONG_PATH_CAP));
        }
    }
    fs::create_dir_all(&args.out)?;
    let mut written = Vec::new();
    let dir = args.out.as_path();
    write_file(dir, format!("sizes-{hash}.csv"), &emit_tables(&report, View::Sizes, Format::Csv)?, &mut written)?;
    let sizes_md = emit_tables(&report, View::Sizes, Format::Markdown)?;
    write_file(dir, format!("sizes-{hash}.md"), &sizes_md, &mut written)?;
    write_file(dir, format!("timings-{hash}.csv"), &emit_tables(&report, View::Timings, Format::Csv)?, &mut written)?;
    write_file(
        dir,
        format!("timings-{hash}.md"),
        &emit_tables(&report, View::Timings, Format::Markdown)?,
        &mut written,
    )?;
    write_file(dir, format!("long-paths-{hash}.csv"), &long_path_table(&long, Format::Csv)?, &mut written)?;
    let full = json!({"report": report, "long_paths": long});
    write_file(dir, format!("report-{hash}.json"), &serde_json::to_string_pretty(&full)?, &mut written)?;
    eprint!("{sizes_md}");
    let failures: usize = report.cells.iter().map(|c| c.failures).sum();
    emit(json!({"files": written, "cells": report.cells.len(), "failures": failures}), hash, Some(cfg.base_seed));
    Ok(())
}

fn cmd_bounds(args: &BoundsArgs) -> Result<()> {
    let mut body = serde_json::Map::new();
    if let (Some(n), Some(p)) = (args.n, args.p) {
        body.insert("beta_upper".into(), json!(er_beta_upper(n, p)?));
        body.insert("any_set".into(), json!(er_any_set_size(n, p)?));
    } else if args.n.is_some() || args.p.is_some() {
        return Err(Error::MalformedInput("--n and --p go together".into()));
    }
    if let Some((name, params)) = load_params(&args.source.preset, &args.source.params)? {
        let params = match args.n {
            Some(n) if args.p.is_none() => scale_communities(&params, n as usize)?,
            _ => params,
        };
        body.insert("network".into(), json!(name));
        body.insert("long_pair_fraction".into(), json!(expected_long_pairs(&params).fraction));
        match args.c_const {
            Some(c) if c > 1.0 => {
                body.insert("diam2".into(), serde_json::to_value(diam2_condition(&params, c)?)?);
            }
            Some(c) => {
                body.insert("diam_gt2".into(), serde_json::to_value(diam_gt2_condition(&params, c)?)?);
            }
            None => {}
        }
    } else if args.c_const.is_some() {
        return Err(Error::MalformedInput("--C needs --preset or --params".into()));
    }
    if body.is_empty() {
        return Err(Error::MalformedInput("give --n and --p, or a parameter set".into()));
    }
    let body = Value::Object(body);
    eprintln!("{body}");
    let hashed = json!({"command": "bounds", "n": args.n, "p": args.p, "C": args.c_const,
        "preset": args.source.preset, "params": args.source.params});
    emit(body, hash_json(&hashed), None);
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("RESOLVEKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    configure_threads();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Mine(a) => cmd_mine(a),
        Command::Resolve(a) => cmd_resolve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Bounds(a) => cmd_bounds(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
