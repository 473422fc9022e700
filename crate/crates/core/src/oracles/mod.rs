//! Exact values of every characteristic the estimators target, computed by
//! full enumeration of the graph. These are the ground truth for tests and
//! for the Monte Carlo harness.

mod power_chain;
mod walkers;

pub use power_chain::{enumerate_power_chain, frontier_stationary_probability, PowerChain, DEFAULT_STATE_CAP};
pub use walkers::{exact_kfs_distribution, multiplerw_mean_occupancy, multiplerw_walker_ratio, SubsetStats};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{connected_components, DegreeMode, Graph, LabelId, LabelStore, VertexId};
use crate::stats::CompensatedSum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("unknown label id {0}")]
    UnknownLabel(LabelId),
    #[error("no labelled edges")]
    NoLabelledEdges,
    #[error("assortativity undefined: zero variance in the {0} degree marginal")]
    AssortativityUndefined(&'static str),
    #[error("global clustering undefined: no vertex has degree >= 2")]
    NoClusterableVertices,
    #[error("power chain would have {states} states (cap {cap})")]
    StateCapExceeded { states: u128, cap: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is bipartite; the walk has no unique limiting distribution")]
    Bipartite,
    #[error("vertex subset must be a non-empty proper subset of V")]
    InvalidSubset,
    #[error("power iteration did not reach residual {tolerance:e} in {iterations} iterations")]
    NoConvergence { tolerance: f64, iterations: usize },
}

/// `theta_l = |{v : l in L_v(v)}| / |V|`.
pub fn exact_vertex_label_density(graph: &Graph, labels: &LabelStore, l: LabelId) -> Result<f64, OracleError> {
    if !labels.contains_label(l) {
        return Err(OracleError::UnknownLabel(l));
    }
    let count = graph.vertices().filter(|&v| labels.vertex_has(v, l)).count();
    let theta = count as f64 / graph.n_vertices() as f64;
    debug_assert!((theta - vertex_label_density_edge_form(graph, labels, l)).abs() < 1e-9);
    Ok(theta)
}

/// The same density written as a sum over symmetric edges:
/// `(1/|V|) * sum_{(u,v) in E} 1(l in L_v(v)) / deg(v)`.
pub fn vertex_label_density_edge_form(graph: &Graph, labels: &LabelStore, l: LabelId) -> f64 {
    let sum: CompensatedSum = graph.edges().filter(|&(_, v)| labels.vertex_has(v, l)).map(|(_, v)| 1.0 / graph.degree(v) as f64).collect();
    sum.value() / graph.n_vertices() as f64
}

/// `theta_k` for every degree `k` in `0..=max`.
pub fn exact_degree_density(graph: &Graph, mode: DegreeMode) -> Vec<f64> {
    let degrees: Vec<usize> = graph.vertices().map(|v| graph.degree_in_mode(v, mode)).collect();
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut hist = vec![0usize; max + 1];
    for d in degrees {
        hist[d] += 1;
    }
    let n = graph.n_vertices() as f64;
    hist.into_iter().map(|c| c as f64 / n).collect()
}

/// `gamma_k`: fraction of vertices with degree strictly greater than `k`,
/// for `k` in `0..=max` (so the last entry is 0).
pub fn exact_degree_ccdf(graph: &Graph, mode: DegreeMode) -> Vec<f64> {
    ccdf_from_density(&exact_degree_density(graph, mode))
}

pub fn ccdf_from_density(theta: &[f64]) -> Vec<f64> {
    let mut gamma = vec![0.0; theta.len()];
    let mut tail = CompensatedSum::new();
    for k in (0..theta.len()).rev() {
        gamma[k] = tail.value();
        tail.add(theta[k]);
    }
    gamma
}

/// Fraction of labelled edges (`L_e(u,v)` non-empty) that carry `l`.
pub fn exact_edge_label_density(graph: &Graph, labels: &LabelStore, l: LabelId) -> Result<f64, OracleError> {
    if !labels.contains_label(l) {
        return Err(OracleError::UnknownLabel(l));
    }
    let labelled: Vec<_> = graph.edges().filter(|&(u, v)| !labels.edge_labels(u, v).is_empty()).collect();
    if labelled.is_empty() {
        return Err(OracleError::NoLabelledEdges);
    }
    let hits = labelled.iter().filter(|&&(u, v)| labels.edge_has(u, v, l)).count();
    Ok(hits as f64 / labelled.len() as f64)
}

/// Degree assortativity of `G_d`: Pearson correlation between
/// `outdeg_d(u)` and `indeg_d(v)` over the directed edges `(u, v)` of `G_d`.
pub fn exact_assortativity(graph: &Graph) -> Result<f64, OracleError> {
    let n = graph.n_directed_edges() as f64;
    let (mut si, mut sj) = (CompensatedSum::new(), CompensatedSum::new());
    for (u, v) in graph.directed_edges() {
        si.add(graph.out_degree_d(u) as f64);
        sj.add(graph.in_degree_d(v) as f64);
    }
    let (mi, mj) = (si.value() / n, sj.value() / n);
    let (mut cov, mut vi, mut vj) = (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
    for (u, v) in graph.directed_edges() {
        let di = graph.out_degree_d(u) as f64 - mi;
        let dj = graph.in_degree_d(v) as f64 - mj;
        cov.add(di * dj);
        vi.add(di * di);
        vj.add(dj * dj);
    }
    let (vi, vj) = (vi.value() / n, vj.value() / n);
    if vi <= 1e-15 {
        return Err(OracleError::AssortativityUndefined("out"));
    }
    if vj <= 1e-15 {
        return Err(OracleError::AssortativityUndefined("in"));
    }
    Ok(cov.value() / n / (vi.sqrt() * vj.sqrt()))
}

/// `Delta(v)`: number of triangles through each vertex, by checking every
/// pair of neighbors for adjacency.
pub fn triangle_counts(graph: &Graph) -> Vec<u64> {
    graph
        .vertices()
        .map(|v| {
            let nb = graph.neighbors(v);
            let mut t = 0u64;
            for (a, &x) in nb.iter().enumerate() {
                for &y in &nb[a + 1..] {
                    if graph.has_edge(x, y) {
                        t += 1;
                    }
                }
            }
            t
        })
        .collect()
}

/// Global clustering coefficient: the mean of `Delta(v) / C(deg(v), 2)` over
/// vertices with degree at least two.
pub fn exact_global_clustering(graph: &Graph) -> Result<f64, OracleError> {
    let triangles = triangle_counts(graph);
    let mut sum = CompensatedSum::new();
    let mut n_star = 0usize;
    for v in graph.vertices() {
        let d = graph.degree(v) as f64;
        if d >= 2.0 {
            n_star += 1;
            sum.add(triangles[v as usize] as f64 / (d * (d - 1.0) / 2.0));
        }
    }
    if n_star == 0 {
        return Err(OracleError::NoClusterableVertices);
    }
    Ok(sum.value() / n_star as f64)
}

/// Two-colouring test on the symmetric graph.
pub fn is_bipartite(graph: &Graph) -> bool {
    let mut colour = vec![u8::MAX; graph.n_vertices()];
    let mut stack = Vec::new();
    for s in graph.vertices() {
        if colour[s as usize] != u8::MAX {
            continue;
        }
        colour[s as usize] = 0;
        stack.push(s);
        while let Some(u) = stack.pop() {
            let next = 1 - colour[u as usize];
            for &w in graph.neighbors(u) {
                match colour[w as usize] {
                    u8::MAX => {
                        colour[w as usize] = next;
                        stack.push(w);
                    }
                    c if c != next => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Connected and non-bipartite: the walk on `G` has a unique limit.
pub fn require_ergodic(graph: &Graph) -> Result<(), OracleError> {
    if !connected_components(graph).is_connected() {
        return Err(OracleError::NotConnected);
    }
    if is_bipartite(graph) {
        return Err(OracleError::Bipartite);
    }
    Ok(())
}

pub(crate) fn validate_subset(graph: &Graph, subset: &[VertexId]) -> Result<Vec<VertexId>, OracleError> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.len() >= graph.n_vertices() || s.iter().any(|&v| v as usize >= graph.n_vertices()) {
        return Err(OracleError::InvalidSubset);
    }
    Ok(s)
}

/// Which characteristics [`CharacteristicTruth::compute`] evaluates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthTargets {
    #[serde(default)]
    pub vertex_labels: bool,
    #[serde(default)]
    pub edge_labels: bool,
    #[serde(default)]
    pub degree_ccdf: Option<DegreeMode>,
    #[serde(default)]
    pub assortativity: bool,
    #[serde(default)]
    pub clustering: bool,
}

/// Exact characteristic values, serialised for the harness.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicTruth {
    /// Vertex-label densities keyed by label name.
    pub theta: BTreeMap<String, f64>,
    /// Degree CCDF keyed by degree.
    pub gamma: BTreeMap<usize, f64>,
    /// Edge-label densities keyed by label name.
    pub p_edge: BTreeMap<String, f64>,
    pub r: Option<f64>,
    #[serde(rename = "C")]
    pub clustering: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_mode: Option<DegreeMode>,
}

impl CharacteristicTruth {
    /// Undefined quantities (zero-variance assortativity, no labelled edges,
    /// ...) are left as `None` or absent.
    pub fn compute(graph: &Graph, labels: &LabelStore, targets: &TruthTargets) -> Self {
        let mut truth = Self::default();
        if targets.vertex_labels {
            for (id, name) in labels.names().iter().enumerate() {
                if let Ok(t) = exact_vertex_label_density(graph, labels, id as LabelId) {
                    truth.theta.insert(name.clone(), t);
                }
            }
        }
        if targets.edge_labels {
            for (id, name) in labels.names().iter().enumerate() {
                if let Ok(p) = exact_edge_label_density(graph, labels, id as LabelId) {
                    truth.p_edge.insert(name.clone(), p);
                }
            }
        }
        if let Some(mode) = targets.degree_ccdf {
            truth.gamma = exact_degree_ccdf(graph, mode).into_iter().enumerate().collect();
            truth.degree_mode = Some(mode);
        }
        if targets.assortativity {
            truth.r = exact_assortativity(graph).ok();
        }
        if targets.clustering {
            truth.clustering = exact_global_clustering(graph).ok();
        }
        truth
    }
}
