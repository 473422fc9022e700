use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{summarize, ErrorSummary};
use super::HarnessError;
use crate::estimators::{ClusteringNormalizer, Estimates};
use crate::graph::{
    generate_barabasi_albert, generate_joined_ba, load_directed_edge_list, load_edge_labels, load_vertex_labels, restrict_to_lcc,
    DegreeMode, Graph, LabelStore,
};
use crate::oracles::{CharacteristicTruth, TruthTargets};
use crate::rng::RngStream;
use crate::samplers::{discard_burn_in, Sample, SamplerConfig};

/// An absolute budget or a fraction of the vertex count written `V/k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    Absolute(f64),
    PerVertices(f64),
}

impl Budget {
    pub fn resolve(&self, n_vertices: usize) -> f64 {
        match *self {
            Budget::Absolute(b) => b,
            Budget::PerVertices(k) => n_vertices as f64 / k,
        }
    }
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let positive = |x: f64| (x.is_finite() && x > 0.0).then_some(x);
        if let Some(k) = s.strip_prefix("V/").or_else(|| s.strip_prefix("|V|/")) {
            return k.trim().parse().ok().and_then(positive).map(Budget::PerVertices).ok_or_else(|| format!("bad budget `{s}`"));
        }
        s.parse().ok().and_then(positive).map(Budget::Absolute).ok_or_else(|| format!("bad budget `{s}`; use a number or V/k"))
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Absolute(b) => write!(f, "{b}"),
            Budget::PerVertices(k) => write!(f, "V/{k}"),
        }
    }
}

impl Serialize for Budget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Budget::Absolute(b) => s.serialize_f64(*b),
            Budget::PerVertices(_) => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Budget {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(b) => Budget::from_str(&b.to_string()),
            Raw::Text(s) => Budget::from_str(&s),
        }
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Ba {
        n: usize,
        attach: usize,
        seed: u64,
    },
    Gab {
        n_each: usize,
        attach_a: usize,
        attach_b: usize,
        seed: u64,
    },
    File {
        path: PathBuf,
        #[serde(default)]
        vertex_labels: Option<PathBuf>,
        #[serde(default)]
        edge_labels: Option<PathBuf>,
        /// Keep only the largest connected component.
        #[serde(default)]
        largest_component: bool,
    },
}

/// A loaded graph with its labels and any loader warnings.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: LabelStore,
    pub warnings: Vec<String>,
}

impl GraphSpec {
    pub fn load(&self) -> Result<LoadedGraph, HarnessError> {
        let open = |p: &Path| File::open(p).map(BufReader::new).map_err(|e| HarnessError::Config(format!("{}: {e}", p.display())));
        match self {
            GraphSpec::Ba { n, attach, seed } => {
                let graph = generate_barabasi_albert(*n, *attach, &RngStream::new(*seed))?;
                let labels = LabelStore::new(graph.n_vertices());
                Ok(LoadedGraph { graph, labels, warnings: vec![] })
            }
            GraphSpec::Gab { n_each, attach_a, attach_b, seed } => {
                let graph = generate_joined_ba(*n_each, *attach_a, *attach_b, &RngStream::new(*seed))?.graph;
                let labels = LabelStore::new(graph.n_vertices());
                Ok(LoadedGraph { graph, labels, warnings: vec![] })
            }
            GraphSpec::File { path, vertex_labels, edge_labels, largest_component } => {
                let graph = Graph::build(&load_directed_edge_list(open(path)?)?)?;
                let mut warnings = Vec::new();
                let mut labels = match vertex_labels {
                    Some(p) => {
                        let load = load_vertex_labels(open(p)?, &graph)?;
                        warnings.extend(load.warnings);
                        load.labels
                    }
                    None => LabelStore::new(graph.n_vertices()),
                };
                if let Some(p) = edge_labels {
                    warnings.extend(load_edge_labels(open(p)?, &graph, &mut labels)?);
                }
                let (graph, labels) = if *largest_component { restrict_to_lcc(&graph, &labels) } else { (graph, labels) };
                Ok(LoadedGraph { graph, labels, warnings })
            }
        }
    }

    fn rebase(&mut self, base: &Path) {
        if let GraphSpec::File { path, vertex_labels, edge_labels, .. } = self {
            for p in std::iter::once(path).chain(vertex_labels.iter_mut()).chain(edge_labels.iter_mut()) {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
    }
}

fn default_runs() -> usize {
    10_000
}

/// Monte Carlo experiment description. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub graph: GraphSpec,
    pub methods: Vec<SamplerConfig>,
    pub budget: Budget,
    #[serde(default)]
    pub burn_in: usize,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub targets: TruthTargets,
    /// Replace vertex labels by `degree=k` labels in this mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_labels: Option<DegreeMode>,
    /// Only report these vertex/edge labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_labels: Option<Vec<String>>,
    #[serde(default)]
    pub clustering_normalizer: ClusteringNormalizer,
    /// Directory holding exact values keyed by graph hash.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth_cache: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Parses a config file; relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg: Self = serde_json::from_str(&text).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.graph.rebase(base);
        if let Some(dir) = &mut cfg.truth_cache {
            if dir.is_relative() {
                *dir = base.join(&*dir);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self, graph: &Graph) -> Result<f64, HarnessError> {
        if self.runs == 0 {
            return Err(HarnessError::Config("runs must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(HarnessError::Config("no methods".into()));
        }
        let budget = self.budget.resolve(graph.n_vertices());
        for m in &self.methods {
            m.check_budget(graph, budget).map_err(|e| HarnessError::Config(e.to_string()))?;
            if self.burn_in > 0 && m.steps_per_walker(budget) <= self.burn_in as f64 {
                return Err(HarnessError::Config(format!("burn-in {} leaves {} no samples at budget {budget}", self.burn_in, m.label())));
            }
        }
        Ok(budget)
    }
}

/// Exact values, computed once per graph and target set.
pub fn cached_truth(
    graph: &Graph,
    labels: &LabelStore,
    targets: &TruthTargets,
    cache_dir: Option<&Path>,
) -> Result<CharacteristicTruth, HarnessError> {
    #[derive(Serialize, Deserialize)]
    struct Entry {
        graph_hash: String,
        labels: Vec<String>,
        targets: TruthTargets,
        truth: CharacteristicTruth,
    }
    let hash = graph.content_hash();
    let file = cache_dir.map(|d| d.join(format!("{hash}.json")));
    if let Some(f) = &file {
        if let Ok(text) = std::fs::read_to_string(f) {
            if let Ok(e) = serde_json::from_str::<Entry>(&text) {
                if e.graph_hash == hash && &e.targets == targets && e.labels == labels.names() {
                    return Ok(e.truth);
                }
            }
        }
    }
    let truth = CharacteristicTruth::compute(graph, labels, targets);
    if let Some(f) = file {
        if let Some(dir) = f.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let entry = Entry { graph_hash: hash, labels: labels.names().to_vec(), targets: targets.clone(), truth: truth.clone() };
        std::fs::write(&f, serde_json::to_string_pretty(&entry)?)?;
    }
    Ok(truth)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub method: String,
    /// `theta[l]`, `p_edge[l]`, `gamma[i]`, `r` or `C`.
    pub label: String,
    #[serde(flatten)]
    pub summary: ErrorSummary,
    /// Set on CCDF rows, where the NMSE is the CNMSE.
    pub cnmse: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub graph_hash: String,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub budget: f64,
    pub burn_in: usize,
    pub runs: usize,
    pub seed: u64,
    pub rows: Vec<ReportRow>,
    pub warnings: Vec<String>,
}

impl ErrorReport {
    pub fn row(&self, method: &str, label: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.method == method && r.label == label)
    }

    /// CSV with `#` metadata lines; floats use shortest round-trip form so
    /// output is byte-stable.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), HarnessError> {
        writeln!(out, "# graph_hash={}", self.graph_hash)?;
        writeln!(out, "# vertices={} edges={}", self.n_vertices, self.n_edges)?;
        writeln!(out, "# budget={} burn_in={} runs={} seed={}", self.budget, self.burn_in, self.runs, self.seed)?;
        for w in &self.warnings {
            writeln!(out, "# warning: {w}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["method", "label", "truth", "mean_estimate", "bias", "nmse", "cnmse", "runs"])?;
        for r in &self.rows {
            let s = &r.summary;
            let (nmse, cnmse) = match r.cnmse {
                Some(c) => (String::new(), c.to_string()),
                None => (s.nmse.to_string(), String::new()),
            };
            w.write_record([
                r.method.clone(),
                r.label.clone(),
                s.truth.to_string(),
                s.mean_estimate.to_string(),
                s.bias.to_string(),
                nmse,
                cnmse,
                s.runs.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Everything a Monte Carlo experiment produced.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub report: ErrorReport,
    pub truth: CharacteristicTruth,
    /// Per-run estimates, by method label, in run order.
    pub raw: BTreeMap<String, Vec<Estimates>>,
}

/// Runs every method `runs` times. Run `r` of method `k` draws from stream
/// `(seed, r)` child `k`, so results are independent of `workers`.
pub fn run_monte_carlo(config: &ExperimentConfig, workers: usize) -> Result<ExperimentOutput, HarnessError> {
    let LoadedGraph { graph, mut labels, mut warnings } = config.graph.load()?;
    if let Some(mode) = config.degree_labels {
        labels = degree_labels_with_edges(&graph, &labels, mode);
    }
    run_on_graph(config, &graph, &labels, workers).map(|mut out| {
        warnings.append(&mut out.report.warnings);
        out.report.warnings = warnings;
        out
    })
}

fn degree_labels_with_edges(graph: &Graph, labels: &LabelStore, mode: DegreeMode) -> LabelStore {
    let mut out = LabelStore::degree_labels(graph, mode);
    for ((u, v), set) in labels.labelled_edges() {
        for &l in set {
            out.add_edge_label(u, v, labels.name(l));
        }
    }
    out
}

/// As [`run_monte_carlo`] on an already loaded graph.
pub fn run_on_graph(
    config: &ExperimentConfig,
    graph: &Graph,
    labels: &LabelStore,
    workers: usize,
) -> Result<ExperimentOutput, HarnessError> {
    let budget = config.validate(graph)?;
    let truth = cached_truth(graph, labels, &config.targets, config.truth_cache.as_deref())?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| HarnessError::Config(e.to_string()))?;

    let mut raw = BTreeMap::new();
    for (k, method) in config.methods.iter().enumerate() {
        let runs: Result<Vec<Estimates>, HarnessError> = pool.install(|| {
            (0..config.runs)
                .into_par_iter()
                .map(|r| {
                    let stream = RngStream::with_index(config.seed, r as u64).child(k as u64);
                    let sample = match method.run(graph, budget, &stream)? {
                        Sample::Edges(t) if config.burn_in > 0 => Sample::Edges(discard_burn_in(&t, config.burn_in)?),
                        s => s,
                    };
                    Ok(Estimates::compute(&sample, graph, labels, &config.targets, config.clustering_normalizer))
                })
                .collect()
        });
        let label = method.label();
        if raw.insert(label.clone(), runs?).is_some() {
            return Err(HarnessError::Config(format!("method {label} listed twice")));
        }
    }

    let mut warnings = Vec::new();
    let mut rows = Vec::new();
    let keep = |name: &str| config.report_labels.as_ref().is_none_or(|l| l.iter().any(|x| x == name));
    for method in &config.methods {
        let label = method.label();
        let runs = &raw[&label];
        let mut push = |name: String, xs: Vec<f64>, t: f64, ccdf: bool, warnings: &mut Vec<String>| match summarize(&xs, t) {
            Some(summary) => rows.push(ReportRow { method: label.clone(), label: name, cnmse: ccdf.then_some(summary.nmse), summary }),
            None if t == 0.0 => warnings.push(format!("{label}: {name} has zero truth and is omitted")),
            None => warnings.push(format!("{label}: {name} undefined in every run")),
        };
        for (name, &t) in truth.theta.iter().filter(|(n, _)| keep(n)) {
            let xs = runs.iter().map(|e| e.theta.get(name).copied().unwrap_or(0.0)).collect();
            push(format!("theta[{name}]"), xs, t, false, &mut warnings);
        }
        for (name, &t) in truth.p_edge.iter().filter(|(n, _)| keep(n)) {
            let xs = runs.iter().filter_map(|e| e.p_edge.get(name).copied()).collect();
            push(format!("p_edge[{name}]"), xs, t, false, &mut warnings);
        }
        for (&i, &t) in &truth.gamma {
            let xs = runs.iter().map(|e| e.gamma_at(i)).collect();
            push(format!("gamma[{i}]"), xs, t, true, &mut warnings);
        }
        if let Some(t) = truth.r {
            push("r".into(), runs.iter().filter_map(|e| e.r).collect(), t, false, &mut warnings);
        }
        if let Some(t) = truth.clustering {
            push("C".into(), runs.iter().filter_map(|e| e.clustering).collect(), t, false, &mut warnings);
        }
    }
    let report = ErrorReport {
        graph_hash: graph.content_hash(),
        n_vertices: graph.n_vertices(),
        n_edges: graph.n_edges(),
        budget,
        burn_in: config.burn_in,
        runs: config.runs,
        seed: config.seed,
        rows,
        warnings,
    };
    Ok(ExperimentOutput { report, truth, raw })
}
