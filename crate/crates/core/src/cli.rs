//! Command-line front end. Exit codes: 0 success, 2 usage or config error,
//! 3 undefined estimate.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::estimators::{
    degree_density_from_vertex_samples, estimate_assortativity, estimate_degree_ccdf, estimate_edge_label_density,
    estimate_global_clustering, estimate_group_densities, vertex_density_from_vertex_samples, ClusteringNormalizer, EstimatorError,
};
use crate::graph::{
    generate_barabasi_albert, generate_joined_ba, load_directed_edge_list, load_edge_labels, load_vertex_labels, restrict_to_lcc,
    DegreeMode, Graph, LabelStore,
};
use crate::harness::{run_monte_carlo, Budget, ExperimentConfig, HarnessError};
use crate::oracles::ccdf_from_density;
use crate::rng::RngStream;
use crate::samplers::{
    discard_burn_in, read_trace_csv, write_trace_csv, write_vertex_trace_csv, CostModel, Method, Sample, SamplerConfig,
    StartCostAccounting, StartMode, TraceIoError, TraceMeta,
};

const PRESETS: &[(&str, &str)] = &[
    ("gab-ccdf", include_str!("../presets/gab-ccdf.json")),
    ("gab-ccdf-v10", include_str!("../presets/gab-ccdf-v10.json")),
    ("gab-ccdf-stationary", include_str!("../presets/gab-ccdf-stationary.json")),
    ("gab-theta10", include_str!("../presets/gab-theta10.json")),
    ("ba-vertex-vs-edge", include_str!("../presets/ba-vertex-vs-edge.json")),
    ("ba-hit-ratio", include_str!("../presets/ba-hit-ratio.json")),
];

/// Bundled experiment configs by name.
pub fn preset(name: &str) -> Option<&'static str> {
    let name = name.trim_end_matches(".json");
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

#[derive(Debug, Parser)]
#[command(name = "frontier", version, about = "Graph sampling with Frontier Sampling and random walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic graph as a canonical edge list plus a JSON sidecar.
    Generate {
        #[command(subcommand)]
        model: Model,
    },
    /// Sample a graph and write the trace as CSV.
    Sample(SampleArgs),
    /// Estimate characteristics from a trace.
    Estimate(EstimateArgs),
    /// Run a Monte Carlo experiment from a JSON config or bundled preset.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overwrite existing output files.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Model {
    /// Barabasi-Albert preferential attachment.
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        attach: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two BA graphs of different density joined by one edge.
    Gab {
        #[arg(long)]
        n_each: usize,
        #[arg(long)]
        attach_a: usize,
        #[arg(long)]
        attach_b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Directed edge list, one `u v` pair per line.
    #[arg(long)]
    pub graph: PathBuf,
    /// Keep only the largest connected component.
    #[arg(long)]
    pub lcc: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// rw, mrw, fs, dfs, rv or re.
    pub method: Method,
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Budget, absolute or `V/k`; a time budget for dfs.
    #[arg(long)]
    pub budget: Budget,
    /// Number of walkers.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// `uniform`, `degree` or `explicit:ID,ID,...` (input-file ids).
    #[arg(long, default_value = "uniform")]
    pub start: String,
    #[arg(long, default_value_t = 1.0)]
    pub step_cost: f64,
    #[arg(long, default_value_t = 1.0)]
    pub query_cost: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hit_ratio: f64,
    #[arg(long, default_value_t = 2.0)]
    pub edge_cost: f64,
    #[arg(long, default_value_t = 1.0)]
    pub edge_hit_ratio: f64,
    /// Charge start queries as drawn rather than at their expected cost.
    #[arg(long)]
    pub stochastic_start: bool,
    /// Drop this many leading steps per walker.
    #[arg(long, default_value_t = 0)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Target {
    Theta,
    Gamma,
    #[value(name = "p_edge", alias = "p-edge")]
    PEdge,
    R,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[command(flatten)]
    pub graph: GraphArgs,
    /// `id label...` lines; degree labels are used when absent.
    #[arg(long)]
    pub vertex_labels: Option<PathBuf>,
    /// `u v label...` lines.
    #[arg(long)]
    pub edge_labels: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "theta,gamma")]
    pub targets: Vec<Target>,
    /// Degree used for the CCDF and degree labels: symmetric, in or out.
    #[arg(long, default_value = "symmetric")]
    pub degree_mode: DegreeMode,
    #[arg(long, value_enum, default_value = "degree-at-least-two")]
    pub clustering_normalizer: NormalizerArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormalizerArg {
    DegreeAtLeastTwo,
    AllSampled,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Experiment config (JSON).
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// Bundled config by name, e.g. `gab-ccdf`.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Also write the JSON report here (defaults to the CSV path with a
    /// `.json` extension when `--out` is given).
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Undefined { code: &'static str, message: String },
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EstimatorError> for Failure {
    fn from(e: EstimatorError) -> Self {
        Failure::Undefined { code: e.code(), message: e.to_string() }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `args` and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Generate { model } => generate(model),
        Command::Sample(a) => sample(a),
        Command::Estimate(a) => estimate(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Undefined { code, message }) => {
            eprintln!("undefined: {message}");
            println!("{}", json!({ "error": { "code": code, "message": message } }));
            ExitCode::from(3)
        }
    }
}

fn check_writable(path: &Path, force: bool) -> Result<(), Failure> {
    if path.exists() && !force {
        return Err(Failure::Usage(format!("{} exists; pass --force to overwrite", path.display())));
    }
    Ok(())
}

fn emit(output: &OutputArgs, bytes: &[u8]) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            check_writable(path, output.force)?;
            std::fs::write(path, bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn generate(model: Model) -> Result<(), Failure> {
    let (graph, spec, output) = match model {
        Model::Ba { n, attach, seed, output } => {
            let g = generate_barabasi_albert(n, attach, &RngStream::new(seed)).map_err(usage)?;
            (g, json!({ "generator": "ba", "n": n, "attach": attach, "seed": seed }), output)
        }
        Model::Gab { n_each, attach_a, attach_b, seed, output } => {
            let j = generate_joined_ba(n_each, attach_a, attach_b, &RngStream::new(seed)).map_err(usage)?;
            let spec = json!({
                "generator": "gab", "n_each": n_each, "attach_a": attach_a, "attach_b": attach_b, "seed": seed,
                "bridge": [j.bridge.0, j.bridge.1],
            });
            (j.graph, spec, output)
        }
    };
    if let Some(path) = &output.out {
        check_writable(&sidecar_path(path), output.force)?;
    }
    emit(&output, graph.canonical_text().as_bytes())?;
    if let Some(path) = &output.out {
        let mut meta = spec;
        meta["graph_hash"] = json!(graph.content_hash());
        meta["vertices"] = json!(graph.n_vertices());
        meta["directed_edges"] = json!(graph.n_directed_edges());
        meta["undirected_edges"] = json!(graph.n_edges() / 2);
        std::fs::write(sidecar_path(path), serde_json::to_string_pretty(&meta).map_err(usage)? + "\n")?;
    }
    Ok(())
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(args: &GraphArgs) -> Result<Graph, Failure> {
    let edges = load_directed_edge_list(open(&args.graph)?).map_err(|e| usage(format!("{}: {e}", args.graph.display())))?;
    let graph = Graph::build(&edges).map_err(usage)?;
    Ok(if args.lcc { restrict_to_lcc(&graph, &LabelStore::new(graph.n_vertices())).0 } else { graph })
}

fn parse_start(text: &str, graph: &Graph) -> Result<StartMode, Failure> {
    match text {
        "uniform" => Ok(StartMode::Uniform),
        "degree" | "degree_proportional" | "stationary" => Ok(StartMode::DegreeProportional),
        _ => {
            let list = text.strip_prefix("explicit:").ok_or_else(|| usage(format!("unknown start mode `{text}`")))?;
            list.split(',')
                .map(|s| {
                    let id: u64 = s.trim().parse().map_err(|_| usage(format!("bad vertex id `{s}`")))?;
                    graph.dense_id(id).ok_or_else(|| usage(format!("vertex {id} is not in the graph")))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(StartMode::Explicit)
        }
    }
}

fn sample(a: SampleArgs) -> Result<(), Failure> {
    let graph = load_graph(&a.graph)?;
    let config = SamplerConfig {
        method: a.method,
        m: a.m,
        start: parse_start(&a.start, &graph)?,
        cost: CostModel {
            walk_step_cost: a.step_cost,
            vertex_query_cost: a.query_cost,
            vertex_hit_ratio: a.hit_ratio,
            edge_sample_cost: a.edge_cost,
            edge_hit_ratio: a.edge_hit_ratio,
            start_accounting: if a.stochastic_start { StartCostAccounting::Stochastic } else { StartCostAccounting::Expected },
        },
    };
    let budget = a.budget.resolve(graph.n_vertices());
    config.check_budget(&graph, budget).map_err(usage)?;
    let sample = match config.run(&graph, budget, &RngStream::new(a.seed)).map_err(usage)? {
        Sample::Edges(t) if a.burn_in > 0 => Sample::Edges(discard_burn_in(&t, a.burn_in).map_err(usage)?),
        s => s,
    };
    let meta = TraceMeta::for_sample(&graph, &sample, Some(a.seed));
    let mut buf = Vec::new();
    match &sample {
        Sample::Edges(t) => write_trace_csv(&mut buf, &graph, t, &meta),
        Sample::Vertices(t) => write_vertex_trace_csv(&mut buf, &graph, t, &meta),
    }
    .map_err(usage)?;
    emit(&a.output, &buf)
}

fn estimate(a: EstimateArgs) -> Result<(), Failure> {
    let graph = load_graph(&a.graph)?;
    let (sample, meta) = read_trace_csv(open(&a.trace)?, &graph).map_err(|e| match e {
        TraceIoError::HashMismatch { .. } => usage(format!("{e}; the trace belongs to a different graph")),
        other => usage(format!("{}: {other}", a.trace.display())),
    })?;
    let mut labels = match &a.vertex_labels {
        Some(p) => {
            let load = load_vertex_labels(open(p)?, &graph).map_err(usage)?;
            load.warnings.iter().for_each(|w| eprintln!("warning: {w}"));
            load.labels
        }
        None => LabelStore::degree_labels(&graph, a.degree_mode),
    };
    if let Some(p) = &a.edge_labels {
        for w in load_edge_labels(open(p)?, &graph, &mut labels).map_err(usage)? {
            eprintln!("warning: {w}");
        }
    }
    let normalizer = match a.clustering_normalizer {
        NormalizerArg::DegreeAtLeastTwo => ClusteringNormalizer::DegreeAtLeastTwo,
        NormalizerArg::AllSampled => ClusteringNormalizer::AllSampled,
    };

    let mut out = EstimateOutput {
        graph_hash: meta.graph_hash.clone(),
        method: meta.method,
        m: meta.m,
        budget: meta.budget,
        spent: meta.spent,
        seed: meta.seed,
        b: 0,
        b_star: BTreeMap::new(),
        theta: None,
        gamma: None,
        p_edge: None,
        r: None,
        c: None,
    };
    let mut targets = a.targets.clone();
    targets.sort();
    targets.dedup();
    let indexed = |g: Vec<f64>| Some(g.into_iter().enumerate().collect());
    match &sample {
        Sample::Vertices(t) => {
            out.b = t.vertices.len();
            for target in targets {
                match target {
                    Target::Theta => {
                        let mut theta = BTreeMap::new();
                        for name in labels.names() {
                            theta.insert(name.clone(), vertex_density_from_vertex_samples(t, &labels, name)?.get(name));
                        }
                        out.theta = Some(theta);
                    }
                    Target::Gamma => {
                        out.gamma = indexed(ccdf_from_density(&degree_density_from_vertex_samples(t, &graph, a.degree_mode)?));
                    }
                    _ => {
                        return Err(Failure::Undefined { code: "requires_edge_trace", message: format!("{target:?} needs an edge trace") })
                    }
                }
            }
        }
        Sample::Edges(t) => {
            out.b = t.len();
            for target in targets {
                match target {
                    Target::Theta => out.theta = Some(estimate_group_densities(t, &graph, &labels)?.values),
                    Target::Gamma => out.gamma = indexed(estimate_degree_ccdf(t, &graph, a.degree_mode)?),
                    Target::PEdge => {
                        let mut p = BTreeMap::new();
                        for name in labels.names() {
                            let d = estimate_edge_label_density(t, &labels, name)?;
                            out.b_star.insert("p_edge", d.b_star);
                            p.insert(name.clone(), d.get(name));
                        }
                        if p.is_empty() {
                            return Err(EstimatorError::NoLabelledEdges.into());
                        }
                        out.p_edge = Some(p);
                    }
                    Target::R => {
                        let r = estimate_assortativity(t, &graph)?;
                        out.b_star.insert("r", r.b_star);
                        out.r = Some(r.r_hat);
                    }
                    Target::C => {
                        let c = estimate_global_clustering(t, &graph, normalizer)?;
                        out.b_star.insert("C", c.n_clusterable);
                        out.c = Some(c.c_hat);
                    }
                }
            }
        }
    }
    emit(&a.output, (serde_json::to_string_pretty(&out).map_err(usage)? + "\n").as_bytes())
}

/// Estimates plus trace metadata, keyed like the exact-value JSON.
#[derive(Debug, Serialize)]
struct EstimateOutput {
    graph_hash: String,
    method: Method,
    m: usize,
    budget: f64,
    spent: f64,
    seed: Option<u64>,
    #[serde(rename = "B")]
    b: usize,
    #[serde(rename = "B_star", skip_serializing_if = "BTreeMap::is_empty")]
    b_star: BTreeMap<&'static str, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<BTreeMap<usize, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_edge: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
}

fn experiment(a: ExperimentArgs) -> Result<(), Failure> {
    let mut config = match (&a.config, &a.preset) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(name)) => {
            let text = preset(name)
                .ok_or_else(|| usage(format!("unknown preset `{name}`; available: {}", preset_names().collect::<Vec<_>>().join(", "))))?;
            serde_json::from_str(text).map_err(usage)?
        }
        (None, None) => return Err(usage("pass --config or --preset")),
    };
    if let Some(runs) = a.runs {
        config.runs = runs;
    }
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    let json_path = a.json.clone().or_else(|| a.output.out.as_ref().map(|p| p.with_extension("json")));
    if let Some(p) = &json_path {
        check_writable(p, a.output.force)?;
    }
    if let Some(p) = &a.output.out {
        check_writable(p, a.output.force)?;
    }
    let out = run_monte_carlo(&config, a.workers)?;
    for w in &out.report.warnings {
        eprintln!("warning: {w}");
    }
    let mut csv = Vec::new();
    out.report.write_csv(&mut csv)?;
    emit(&a.output, &csv)?;
    if let Some(p) = json_path {
        let doc = json!({ "config": config, "truth": out.truth, "report": out.report });
        std::fs::write(&p, serde_json::to_string_pretty(&doc).map_err(usage)? + "\n")?;
    }
    Ok(())
}
