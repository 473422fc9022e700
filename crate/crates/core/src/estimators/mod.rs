//! Estimators of graph characteristics from sampled edges.
//!
//! Walk samplers visit edges uniformly in steady state, so the terminal
//! vertex `v_i` of a step is seen with probability proportional to its
//! degree. Vertex quantities are reweighted by `1/deg(v_i)` and normalised
//! by `S = sum 1/deg(v_i)`, which makes every estimator invariant to scaling
//! the weights.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DegreeMode, Graph, LabelId, LabelStore, VertexId};
use crate::oracles::{ccdf_from_density, TruthTargets};
use crate::samplers::{Sample, SampleTrace, VertexTrace};
use crate::stats::CompensatedSum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimatorError {
    #[error("trace is empty")]
    EmptyTrace,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("no sampled edge carries a label")]
    NoLabelledEdges,
    #[error("assortativity undefined: {0}")]
    AssortativityUndefined(&'static str),
    #[error("no sampled endpoint has degree two or more")]
    NoClusterableVertices,
}

impl EstimatorError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            EstimatorError::EmptyTrace => "empty_trace",
            EstimatorError::UnknownLabel(_) => "unknown_label",
            EstimatorError::NoLabelledEdges => "no_labelled_edges",
            EstimatorError::AssortativityUndefined(_) => "assortativity_undefined",
            EstimatorError::NoClusterableVertices => "no_clusterable_vertices",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub values: BTreeMap<String, f64>,
    /// Samples that entered the estimate.
    pub b_star: usize,
    /// `(1/B) sum 1/deg(v_i)` for reweighted estimates.
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

impl DensityEstimate {
    pub fn get(&self, label: &str) -> f64 {
        self.values.get(label).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssortativityEstimate {
    pub r_hat: f64,
    /// `p_ij` keyed by `(out-degree of u, in-degree of v)`.
    pub joint: BTreeMap<(u32, u32), f64>,
    pub q_out: BTreeMap<u32, f64>,
    pub q_in: BTreeMap<u32, f64>,
    pub sigma_out: f64,
    pub sigma_in: f64,
    pub w_out: u32,
    pub w_in: u32,
    pub b_star: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringEstimate {
    pub c_hat: f64,
    #[serde(rename = "S")]
    pub s: f64,
    /// Sampled endpoints with degree at least two.
    pub n_clusterable: usize,
}

/// Which sampled endpoints enter the clustering normaliser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusteringNormalizer {
    /// Only endpoints with degree at least two; converges to the mean local
    /// clustering over those vertices.
    #[default]
    DegreeAtLeastTwo,
    /// Every sampled endpoint; converges to the same sum divided by `|V|`.
    AllSampled,
}

fn label_id(labels: &LabelStore, l: &str) -> Result<LabelId, EstimatorError> {
    labels.label_id(l).ok_or_else(|| EstimatorError::UnknownLabel(l.to_owned()))
}

/// Fraction of sampled labelled edges that carry `l`.
pub fn estimate_edge_label_density(trace: &SampleTrace, labels: &LabelStore, l: &str) -> Result<DensityEstimate, EstimatorError> {
    let id = label_id(labels, l)?;
    let (mut hits, mut b_star) = (0usize, 0usize);
    for (u, v) in trace.edges() {
        let set = labels.edge_labels(u, v);
        if !set.is_empty() {
            b_star += 1;
            hits += set.binary_search(&id).is_ok() as usize;
        }
    }
    if b_star == 0 {
        return Err(EstimatorError::NoLabelledEdges);
    }
    Ok(DensityEstimate { values: BTreeMap::from([(l.to_owned(), hits as f64 / b_star as f64)]), b_star, s: None })
}

/// Reweighted densities of every vertex label in one pass. Labels never
/// seen get 0.
pub fn estimate_group_densities(trace: &SampleTrace, graph: &Graph, labels: &LabelStore) -> Result<DensityEstimate, EstimatorError> {
    if trace.is_empty() {
        return Err(EstimatorError::EmptyTrace);
    }
    let mut per_label = vec![CompensatedSum::new(); labels.n_labels()];
    let mut s = CompensatedSum::new();
    for step in &trace.steps {
        let w = 1.0 / graph.degree(step.v) as f64;
        s.add(w);
        for &l in labels.vertex_labels(step.v) {
            per_label[l as usize].add(w);
        }
    }
    let total = s.value();
    let values = labels.names().iter().zip(&per_label).map(|(name, sum)| (name.clone(), sum.value() / total)).collect();
    Ok(DensityEstimate { values, b_star: trace.len(), s: Some(total / trace.len() as f64) })
}

/// Reweighted density of vertex label `l` at the terminal vertices.
pub fn estimate_vertex_label_density(
    trace: &SampleTrace,
    graph: &Graph,
    labels: &LabelStore,
    l: &str,
) -> Result<DensityEstimate, EstimatorError> {
    let id = label_id(labels, l)?;
    if trace.is_empty() {
        return Err(EstimatorError::EmptyTrace);
    }
    let (mut hit, mut s) = (CompensatedSum::new(), CompensatedSum::new());
    for step in &trace.steps {
        let w = 1.0 / graph.degree(step.v) as f64;
        s.add(w);
        if labels.vertex_has(step.v, id) {
            hit.add(w);
        }
    }
    let b = trace.len() as f64;
    Ok(DensityEstimate { values: BTreeMap::from([(l.to_owned(), hit.value() / s.value())]), b_star: trace.len(), s: Some(s.value() / b) })
}

/// Reweighted degree distribution `theta_k`, indexed `0..=W` where `W` is
/// the largest degree observed in `mode`.
pub fn estimate_degree_density(trace: &SampleTrace, graph: &Graph, mode: DegreeMode) -> Result<Vec<f64>, EstimatorError> {
    if trace.is_empty() {
        return Err(EstimatorError::EmptyTrace);
    }
    let mut sums: Vec<CompensatedSum> = Vec::new();
    let mut s = CompensatedSum::new();
    for step in &trace.steps {
        let w = 1.0 / graph.degree(step.v) as f64;
        let k = graph.degree_in_mode(step.v, mode);
        if sums.len() <= k {
            sums.resize(k + 1, CompensatedSum::new());
        }
        sums[k].add(w);
        s.add(w);
    }
    let total = s.value();
    Ok(sums.iter().map(|x| x.value() / total).collect())
}

/// `gamma_i = sum_{k > i} theta_k` over observed degrees; the last entry is 0.
pub fn estimate_degree_ccdf(trace: &SampleTrace, graph: &Graph, mode: DegreeMode) -> Result<Vec<f64>, EstimatorError> {
    Ok(ccdf_from_density(&estimate_degree_density(trace, graph, mode)?))
}

/// Degree assortativity of `G_d` from the sampled edges that belong to it,
/// each labelled by `(outdeg(u), indeg(v))`.
pub fn estimate_assortativity(trace: &SampleTrace, graph: &Graph) -> Result<AssortativityEstimate, EstimatorError> {
    let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut b_star = 0usize;
    for (u, v) in trace.edges() {
        if graph.is_original_edge(u, v) {
            *counts.entry((graph.out_degree_d(u), graph.in_degree_d(v))).or_default() += 1;
            b_star += 1;
        }
    }
    if b_star == 0 {
        return Err(EstimatorError::AssortativityUndefined("no sampled edge of the directed graph"));
    }
    let n = b_star as f64;
    let joint: BTreeMap<(u32, u32), f64> = counts.iter().map(|(&k, &c)| (k, c as f64 / n)).collect();
    let mut q_out: BTreeMap<u32, f64> = BTreeMap::new();
    let mut q_in: BTreeMap<u32, f64> = BTreeMap::new();
    for (&(i, j), &p) in &joint {
        *q_out.entry(i).or_default() += p;
        *q_in.entry(j).or_default() += p;
    }
    let moments = |q: &BTreeMap<u32, f64>| {
        let mean: f64 = q.iter().map(|(&k, &p)| k as f64 * p).collect::<CompensatedSum>().value();
        let var: f64 = q.iter().map(|(&k, &p)| (k as f64 - mean).powi(2) * p).collect::<CompensatedSum>().value();
        (mean, var.max(0.0).sqrt())
    };
    let (mu_out, sigma_out) = moments(&q_out);
    let (mu_in, sigma_in) = moments(&q_in);
    if sigma_out == 0.0 || sigma_in == 0.0 {
        return Err(EstimatorError::AssortativityUndefined("zero degree variance in the sample"));
    }
    // sum ij (p_ij - q_i q_j) written as a centred covariance for stability.
    let cov: f64 = joint.iter().map(|(&(i, j), &p)| (i as f64 - mu_out) * (j as f64 - mu_in) * p).collect::<CompensatedSum>().value();
    Ok(AssortativityEstimate {
        r_hat: (cov / (sigma_out * sigma_in)).clamp(-1.0, 1.0),
        w_out: q_out.keys().next_back().copied().unwrap_or(0),
        w_in: q_in.keys().next_back().copied().unwrap_or(0),
        joint,
        q_out,
        q_in,
        sigma_out,
        sigma_in,
        b_star,
    })
}

/// Shared neighbours of `u` and `v` by merging their sorted lists.
pub fn shared_neighbors(graph: &Graph, u: VertexId, v: VertexId) -> usize {
    let (a, b) = (graph.neighbors(u), graph.neighbors(v));
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Global clustering: each step contributes `f(v,u) / (deg(v) (deg(v) - 1))`
/// where `f` counts neighbours shared by the step's endpoints, normalised by
/// `sum 1/deg(v)`. Summed over the edges out of `v` the numerator is
/// `2 Delta(v) / (deg(v) (deg(v) - 1)) = c(v)`, so on a uniform edge sample
/// the ratio converges to the mean local clustering.
pub fn estimate_global_clustering(
    trace: &SampleTrace,
    graph: &Graph,
    normalizer: ClusteringNormalizer,
) -> Result<ClusteringEstimate, EstimatorError> {
    if trace.is_empty() {
        return Err(EstimatorError::EmptyTrace);
    }
    let (mut num, mut s) = (CompensatedSum::new(), CompensatedSum::new());
    let mut n_clusterable = 0usize;
    for step in &trace.steps {
        let d = graph.degree(step.v);
        let w = 1.0 / d as f64;
        if d >= 2 {
            n_clusterable += 1;
            s.add(w);
            num.add(shared_neighbors(graph, step.v, step.u) as f64 / (d * (d - 1)) as f64);
        } else if normalizer == ClusteringNormalizer::AllSampled {
            s.add(w);
        }
    }
    if n_clusterable == 0 {
        return Err(EstimatorError::NoClusterableVertices);
    }
    Ok(ClusteringEstimate { c_hat: num.value() / s.value(), s: s.value() / trace.len() as f64, n_clusterable })
}

/// Plain sample fraction of vertices labelled `l`.
pub fn vertex_density_from_vertex_samples(trace: &VertexTrace, labels: &LabelStore, l: &str) -> Result<DensityEstimate, EstimatorError> {
    let id = label_id(labels, l)?;
    if trace.vertices.is_empty() {
        return Err(EstimatorError::EmptyTrace);
    }
    let hits = trace.vertices.iter().filter(|&&v| labels.vertex_has(v, id)).count();
    let b = trace.vertices.len();
    Ok(DensityEstimate { values: BTreeMap::from([(l.to_owned(), hits as f64 / b as f64)]), b_star: b, s: None })
}

/// Plain degree distribution of independently sampled vertices, indexed
/// `0..=W`.
pub fn degree_density_from_vertex_samples(trace: &VertexTrace, graph: &Graph, mode: DegreeMode) -> Result<Vec<f64>, EstimatorError> {
    if trace.vertices.is_empty() {
        return Err(EstimatorError::EmptyTrace);
    }
    let mut counts: Vec<usize> = Vec::new();
    for &v in &trace.vertices {
        let k = graph.degree_in_mode(v, mode);
        if counts.len() <= k {
            counts.resize(k + 1, 0);
        }
        counts[k] += 1;
    }
    let b = trace.vertices.len() as f64;
    Ok(counts.iter().map(|&c| c as f64 / b).collect())
}

/// Estimates of every requested characteristic, keyed like
/// [`crate::oracles::CharacteristicTruth`]. Quantities that are undefined for
/// this sample are absent and their reasons listed in `undefined`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Estimates {
    pub theta: BTreeMap<String, f64>,
    pub gamma: BTreeMap<usize, f64>,
    pub p_edge: BTreeMap<String, f64>,
    pub r: Option<f64>,
    #[serde(rename = "C")]
    pub clustering: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub undefined: BTreeMap<String, String>,
}

impl Estimates {
    pub fn compute(sample: &Sample, graph: &Graph, labels: &LabelStore, targets: &TruthTargets, normalizer: ClusteringNormalizer) -> Self {
        let mut out = Self::default();
        let mut note = |key: &str, e: EstimatorError| {
            out.undefined.insert(key.to_owned(), e.code().to_owned());
        };
        match sample {
            Sample::Vertices(t) => {
                if targets.vertex_labels {
                    for name in labels.names() {
                        if let Ok(d) = vertex_density_from_vertex_samples(t, labels, name) {
                            out.theta.insert(name.clone(), d.get(name));
                        }
                    }
                }
                if let Some(mode) = targets.degree_ccdf {
                    match degree_density_from_vertex_samples(t, graph, mode) {
                        Ok(d) => out.gamma = ccdf_from_density(&d).into_iter().enumerate().collect(),
                        Err(e) => note("gamma", e),
                    }
                }
                if targets.edge_labels || targets.assortativity || targets.clustering {
                    note("edges", EstimatorError::EmptyTrace);
                }
            }
            Sample::Edges(t) => {
                if targets.vertex_labels {
                    match estimate_group_densities(t, graph, labels) {
                        Ok(d) => out.theta = d.values,
                        Err(e) => note("theta", e),
                    }
                }
                if targets.edge_labels {
                    for name in labels.names() {
                        match estimate_edge_label_density(t, labels, name) {
                            Ok(d) => {
                                out.p_edge.insert(name.clone(), d.get(name));
                            }
                            Err(e) => {
                                note("p_edge", e);
                                break;
                            }
                        }
                    }
                }
                if let Some(mode) = targets.degree_ccdf {
                    match estimate_degree_ccdf(t, graph, mode) {
                        Ok(g) => out.gamma = g.into_iter().enumerate().collect(),
                        Err(e) => note("gamma", e),
                    }
                }
                if targets.assortativity {
                    match estimate_assortativity(t, graph) {
                        Ok(a) => out.r = Some(a.r_hat),
                        Err(e) => note("r", e),
                    }
                }
                if targets.clustering {
                    match estimate_global_clustering(t, graph, normalizer) {
                        Ok(c) => out.clustering = Some(c.c_hat),
                        Err(e) => note("C", e),
                    }
                }
            }
        }
        out
    }

    /// `gamma_i`, zero past the largest observed degree.
    pub fn gamma_at(&self, i: usize) -> f64 {
        self.gamma.get(&i).copied().unwrap_or(0.0)
    }
}
