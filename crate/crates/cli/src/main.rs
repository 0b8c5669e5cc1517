use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use laser_core::experiments::{ablate_lollipop, bench_erdos_renyi, sensitivity_report};
use laser_core::io::{
    read_snapshot_dir, sha256_hex, to_json_pretty, write_file_atomic, write_snapshot_dir, RunInfo,
};
use laser_core::measures::{evaluate, round_sig};
use laser_core::sensitivity::SensitivityConfig;
use laser_core::{
    generate, laser_rewire, GeneratorSpec, Graph, RewireConfig, SelectionMode, SnapshotSequence,
};

#[derive(Debug, Parser)]
#[command(
    name = "laser",
    version,
    about = "Locality-aware sequential graph rewiring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic graph as an edge list.
    Gen(GenArgs),
    /// Rewire a graph into a snapshot directory.
    Rewire(RewireArgs),
    /// Spectral and locality metrics for a graph and its snapshots.
    Metrics(MetricsArgs),
    /// Ablation experiments.
    #[command(subcommand)]
    Ablate(AblateCommand),
    /// Time rewiring on an Erdős–Rényi graph.
    Bench(BenchArgs),
    /// Jacobian sensitivity between two nodes.
    Sensitivity(SensitivityArgs),
}

#[derive(Debug, Subcommand)]
enum AblateCommand {
    /// Spectral max-resistance edge versus one sparse snapshot on a lollipop.
    Lollipop(LollipopArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Path,
    Cycle,
    Clique,
    Lollipop,
    ErdosRenyi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Mu,
    Random,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    chain: Option<usize>,
    #[arg(long)]
    clique_size: Option<usize>,
    /// Edge probability.
    #[arg(long, conflicts_with = "avg_degree")]
    p: Option<f64>,
    /// Expected degree; sets p = avg_degree / nodes.
    #[arg(long)]
    avg_degree: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list path; a `<out>.manifest.json` is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_rho(s: &str) -> Result<f64, String> {
    let rho: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&rho) {
        Ok(rho)
    } else {
        Err(format!("rho must lie in [0, 1], got {rho}"))
    }
}

#[derive(Debug, Args)]
struct RewireArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Snapshot directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    snapshots: usize,
    #[arg(long, default_value_t = 0.5, value_parser = parse_rho)]
    rho: f64,
    #[arg(long, default_value_t = 8)]
    walk_k: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Mu)]
    mode: Mode,
    /// Do not force one selection in orbits whose rounded budget is zero.
    #[arg(long)]
    no_min_one: bool,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    rewired: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LollipopArgs {
    #[arg(long, default_value_t = 12)]
    chain: usize,
    #[arg(long, default_value_t = 64)]
    clique_size: usize,
    #[arg(long, default_value_t = 1.0 / 12.0, value_parser = parse_rho)]
    rho: f64,
    #[arg(long, default_value_t = 20)]
    seeds: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 10_000)]
    nodes: usize,
    #[arg(long, default_value_t = 10.0)]
    avg_degree: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    snapshots: usize,
    #[arg(long, default_value_t = 0.5, value_parser = parse_rho)]
    rho: f64,
    #[arg(long, default_value_t = 8)]
    walk_k: u32,
    /// Also write the snapshot directory.
    #[arg(long)]
    snapshots_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SensitivityArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    source: usize,
    #[arg(long)]
    target: usize,
    #[arg(long, default_value_t = 2)]
    layers: usize,
    #[arg(long)]
    rewired: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    rho_relu: f64,
    /// Shortcut distance for the shortcut sensitivity bound.
    #[arg(long)]
    shortcut: Option<usize>,
    #[arg(long, default_value_t = 4)]
    width: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    #[serde(flatten)]
    body: &'a T,
    run: RunInfo,
}

#[derive(Serialize)]
struct GenManifest<'a> {
    spec: &'a GeneratorSpec,
    n: usize,
    m: usize,
    file: String,
    edges_digest: String,
    #[serde(flatten)]
    run: RunInfo,
}

fn run_info(command: &str, seed: Option<u64>) -> RunInfo {
    RunInfo {
        command: command.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        ..Default::default()
    }
}

fn elapsed_ms(t: Instant) -> f64 {
    round_sig(t.elapsed().as_secs_f64() * 1e3, 12)
}

fn read_graph(path: &Path, run: &mut RunInfo) -> anyhow::Result<Graph> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    run.input_digests
        .insert(path.display().to_string(), sha256_hex(&bytes));
    let text =
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn read_rewired(
    dir: Option<&Path>,
    g: &Graph,
    run: &mut RunInfo,
) -> anyhow::Result<Option<SnapshotSequence>> {
    let Some(dir) = dir else {
        return Ok(None);
    };
    let manifest = dir.join(laser_core::io::MANIFEST_FILE);
    let bytes =
        fs::read(&manifest).with_context(|| format!("cannot read {}", manifest.display()))?;
    run.input_digests
        .insert(manifest.display().to_string(), sha256_hex(&bytes));
    let seq = read_snapshot_dir(dir, g)
        .with_context(|| format!("cannot load snapshots from {}", dir.display()))?;
    Ok(Some(seq))
}

fn emit<T: Serialize>(body: &T, run: RunInfo, out: Option<&Path>) -> anyhow::Result<()> {
    let text = to_json_pretty(&Report { body, run })?;
    match out {
        Some(path) => write_file_atomic(path, text.as_bytes())
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn need(value: Option<usize>, flag: &str, kind: Kind) -> anyhow::Result<usize> {
    value.with_context(|| format!("--{flag} is required for --kind {kind:?}"))
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<()> {
    let mut run = run_info("gen", Some(args.seed));
    let spec = match args.kind {
        Kind::Path => GeneratorSpec::Path {
            nodes: need(args.nodes, "nodes", args.kind)?,
        },
        Kind::Cycle => GeneratorSpec::Cycle {
            nodes: need(args.nodes, "nodes", args.kind)?,
        },
        Kind::Clique => GeneratorSpec::Clique {
            nodes: need(args.nodes, "nodes", args.kind)?,
        },
        Kind::Lollipop => GeneratorSpec::Lollipop {
            chain: need(args.chain, "chain", args.kind)?,
            clique_size: need(args.clique_size, "clique-size", args.kind)?,
        },
        Kind::ErdosRenyi => {
            let nodes = need(args.nodes, "nodes", args.kind)?;
            match (args.p, args.avg_degree) {
                (Some(p), None) => GeneratorSpec::ErdosRenyi {
                    nodes,
                    p,
                    seed: args.seed,
                },
                (None, Some(d)) => GeneratorSpec::erdos_renyi_avg_degree(nodes, d, args.seed),
                _ => bail!("--kind erdos-renyi needs exactly one of --p and --avg-degree"),
            }
        }
    };
    let t = Instant::now();
    let g = generate(&spec)?;
    run.timings_ms.insert("generate".into(), elapsed_ms(t));
    let text = g.to_edge_list();
    let Some(out) = args.out else {
        std::io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    };
    let manifest = GenManifest {
        spec: &spec,
        n: g.node_count(),
        m: g.edge_count(),
        file: out
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default(),
        edges_digest: sha256_hex(text.as_bytes()),
        run,
    };
    let mut manifest_path = out.clone().into_os_string();
    manifest_path.push(".manifest.json");
    let manifest_path = PathBuf::from(manifest_path);
    write_file_atomic(&out, text.as_bytes())
        .with_context(|| format!("cannot write {}", out.display()))?;
    if let Err(e) = write_file_atomic(&manifest_path, to_json_pretty(&manifest)?.as_bytes()) {
        let _ = fs::remove_file(&out);
        return Err(e).with_context(|| format!("cannot write {}", manifest_path.display()));
    }
    Ok(())
}

fn cmd_rewire(args: RewireArgs) -> anyhow::Result<()> {
    let mut run = run_info("rewire", Some(args.seed));
    let g = read_graph(&args.input, &mut run)?;
    let config = RewireConfig {
        snapshots: args.snapshots,
        rho_density: args.rho,
        walk_k: args.walk_k,
        seed: args.seed,
        min_one: !args.no_min_one,
        mode: match args.mode {
            Mode::Mu => SelectionMode::MuGuided,
            Mode::Random => SelectionMode::UniformRandom,
        },
        ..Default::default()
    };
    let t = Instant::now();
    let seq = laser_rewire(&g, &config)?;
    run.timings_ms.insert("rewire".into(), elapsed_ms(t));
    write_snapshot_dir(&seq, &args.out, Some(run))
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    Ok(())
}

fn cmd_metrics(args: MetricsArgs) -> anyhow::Result<()> {
    let mut run = run_info("metrics", None);
    let g = read_graph(&args.input, &mut run)?;
    let seq = read_rewired(args.rewired.as_deref(), &g, &mut run)?;
    run.seed = seq.as_ref().map(|s| s.config().seed);
    let report = evaluate(&g, seq.as_ref())?;
    for w in &report.warnings {
        log::warn!("{w}");
    }
    emit(&report, run, args.out.as_deref())
}

fn cmd_ablate_lollipop(args: LollipopArgs) -> anyhow::Result<()> {
    let mut run = run_info("ablate lollipop", None);
    let t = Instant::now();
    let result = ablate_lollipop(args.chain, args.clique_size, args.rho, args.seeds)?;
    run.timings_ms.insert("total".into(), elapsed_ms(t));
    emit(&result, run, args.out.as_deref())
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<()> {
    let run = run_info("bench", Some(args.seed));
    let config = RewireConfig {
        snapshots: args.snapshots,
        rho_density: args.rho,
        walk_k: args.walk_k,
        seed: args.seed,
        ..Default::default()
    };
    let (report, seq) = bench_erdos_renyi(args.nodes, args.avg_degree, args.seed, &config)?;
    if let Some(dir) = &args.snapshots_out {
        write_snapshot_dir(&seq, dir, Some(run.clone()))
            .with_context(|| format!("cannot write {}", dir.display()))?;
    }
    emit(&report, run, args.out.as_deref())
}

fn cmd_sensitivity(args: SensitivityArgs) -> anyhow::Result<()> {
    let mut run = run_info("sensitivity", None);
    SensitivityConfig {
        rho_relu: args.rho_relu,
        source: args.source,
        target: args.target,
        layers: args.layers,
    }
    .validate()?;
    let g = read_graph(&args.input, &mut run)?;
    let seq = match read_rewired(args.rewired.as_deref(), &g, &mut run)? {
        Some(seq) => seq,
        None => SnapshotSequence::identity(g, RewireConfig::default()),
    };
    let t = Instant::now();
    let report = sensitivity_report(
        &seq,
        args.source,
        args.target,
        args.layers,
        args.rho_relu,
        args.shortcut,
        args.width,
    )?;
    run.timings_ms.insert("total".into(), elapsed_ms(t));
    emit(&report, run, args.out.as_deref())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Rewire(a) => cmd_rewire(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Ablate(AblateCommand::Lollipop(a)) => cmd_ablate_lollipop(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Sensitivity(a) => cmd_sensitivity(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("laser: {e:#}");
            ExitCode::FAILURE
        }
    }
}
