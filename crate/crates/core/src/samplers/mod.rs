//! Graph samplers with unified budget accounting.
//!
//! Walk steps cost [`CostModel::walk_step_cost`] each. Walkers placed by
//! querying random vertices (uniform or degree-proportional starts) pay the
//! vertex query cost; in the default expected-cost accounting that is
//! `vertex_query_cost / vertex_hit_ratio` per walker, which keeps budgets
//! deterministic. Explicit starts are free.

mod config;
mod distributed;
mod frontier;
mod independent;
mod trace_io;
mod walks;

pub use config::{Sample, SamplerConfig};
pub use distributed::distributed_fs;
pub use frontier::{frontier_sampling, FrontierState};
pub use independent::{random_edge_sample, random_vertex_sample};
pub use trace_io::{read_trace_csv, write_trace_csv, write_vertex_trace_csv, TraceIoError, TraceMeta};
pub use walks::{multiple_rw, single_rw};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("insufficient budget: {0}")]
    InsufficientBudget(String),
    #[error("invalid start: {0}")]
    InvalidStart(String),
    #[error("invalid cost model: {0}")]
    InvalidCost(String),
    #[error("burn-in of {w} steps leaves walker {walker} with no samples ({steps} recorded)")]
    BurnInTooLong { w: usize, walker: u32, steps: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[serde(alias = "rv")]
    RandomVertex,
    #[serde(alias = "re")]
    RandomEdge,
    #[serde(alias = "rw")]
    SingleRw,
    #[serde(alias = "mrw")]
    MultipleRw,
    #[serde(alias = "fs")]
    Frontier,
    #[serde(alias = "dfs")]
    DistributedFrontier,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::RandomVertex => "random_vertex",
            Method::RandomEdge => "random_edge",
            Method::SingleRw => "single_rw",
            Method::MultipleRw => "multiple_rw",
            Method::Frontier => "frontier",
            Method::DistributedFrontier => "distributed_frontier",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_owned())).map_err(|_| format!("unknown method `{s}`"))
    }
}

/// Where walkers start.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartMode {
    /// Independent uniform vertices, with replacement.
    #[default]
    Uniform,
    /// Independent vertices drawn with probability `deg(v) / vol(V)`, the
    /// stationary distribution of a single walk.
    DegreeProportional,
    /// Fixed positions, one per walker; no query cost.
    Explicit(Vec<VertexId>),
}

/// How start queries are charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartCostAccounting {
    /// `vertex_query_cost / vertex_hit_ratio` per walker.
    #[default]
    Expected,
    /// Repeat queries until one hits, paying `vertex_query_cost` each.
    Stochastic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostModel {
    pub walk_step_cost: f64,
    pub vertex_query_cost: f64,
    pub vertex_hit_ratio: f64,
    pub edge_sample_cost: f64,
    pub edge_hit_ratio: f64,
    pub start_accounting: StartCostAccounting,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            walk_step_cost: 1.0,
            vertex_query_cost: 1.0,
            vertex_hit_ratio: 1.0,
            edge_sample_cost: 2.0,
            edge_hit_ratio: 1.0,
            start_accounting: StartCostAccounting::Expected,
        }
    }
}

impl CostModel {
    pub fn validate(&self) -> Result<(), SamplerError> {
        let costs = [self.walk_step_cost, self.vertex_query_cost, self.edge_sample_cost];
        if costs.iter().any(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(SamplerError::InvalidCost("costs must be positive".into()));
        }
        for h in [self.vertex_hit_ratio, self.edge_hit_ratio] {
            if !(h > 0.0 && h <= 1.0) {
                return Err(SamplerError::InvalidCost(format!("hit ratio {h} is outside (0, 1]")));
            }
        }
        Ok(())
    }

    /// Expected cost of obtaining one valid random vertex.
    pub fn effective_vertex_cost(&self) -> f64 {
        self.vertex_query_cost / self.vertex_hit_ratio
    }

    /// Expected per-walker start cost under `start`.
    pub fn start_cost(&self, start: &StartMode) -> f64 {
        match start {
            StartMode::Explicit(_) => 0.0,
            StartMode::Uniform | StartMode::DegreeProportional => self.effective_vertex_cost(),
        }
    }
}

/// Whole steps affordable with `remaining` budget.
pub(crate) fn affordable_steps(remaining: f64, step_cost: f64) -> usize {
    if remaining <= 0.0 {
        return 0;
    }
    (remaining / step_cost + 1e-9).floor() as usize
}

/// One sampled directed edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledEdge {
    pub walker: u32,
    pub u: VertexId,
    pub v: VertexId,
    pub cost: f64,
    /// Event time, for continuous-time samplers.
    pub time: Option<f64>,
}

/// Ordered sequence of sampled edges with its budget bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTrace {
    pub method: Method,
    pub m: usize,
    pub start_vertices: Vec<VertexId>,
    pub steps: Vec<SampledEdge>,
    pub budget: f64,
    pub spent: f64,
}

impl SampleTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.steps.iter().map(|s| (s.u, s.v))
    }

    /// Number of recorded steps per walker id `0..m`.
    pub fn steps_per_walker(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.m.max(1)];
        for s in &self.steps {
            counts[s.walker as usize] += 1;
        }
        counts
    }

    /// Steps of one walker, in order.
    pub fn walker_steps(&self, walker: u32) -> impl Iterator<Item = &SampledEdge> + '_ {
        self.steps.iter().filter(move |s| s.walker == walker)
    }

    /// True when every step is an edge of `graph` and each walker's steps
    /// chain head to tail from its start vertex.
    pub fn is_valid_walk(&self, graph: &Graph) -> bool {
        let mut at: Vec<Option<VertexId>> = self.start_vertices.iter().map(|&v| Some(v)).collect();
        at.resize(self.m.max(1), None);
        let chained = matches!(self.method, Method::SingleRw | Method::MultipleRw | Method::Frontier | Method::DistributedFrontier);
        self.steps.iter().all(|s| {
            if !graph.has_edge(s.u, s.v) {
                return false;
            }
            if chained {
                let slot = &mut at[s.walker as usize];
                if slot.is_some_and(|prev| prev != s.u) {
                    return false;
                }
                *slot = Some(s.v);
            }
            true
        })
    }
}

/// Vertices returned by independent random vertex queries.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexTrace {
    pub vertices: Vec<VertexId>,
    /// Cost spent to obtain each vertex, failed queries included.
    pub costs: Vec<f64>,
    pub budget: f64,
    pub spent: f64,
}

/// Draws the start vertices of `m` walkers and returns their total cost.
pub(crate) fn place_walkers<R: Rng>(
    graph: &Graph,
    m: usize,
    start: &StartMode,
    cost: &CostModel,
    rng: &mut R,
) -> Result<(Vec<VertexId>, f64), SamplerError> {
    let n = graph.n_vertices();
    match start {
        StartMode::Explicit(list) => {
            if list.len() != m {
                return Err(SamplerError::InvalidStart(format!("{} explicit starts for {m} walkers", list.len())));
            }
            if let Some(&bad) = list.iter().find(|&&v| v as usize >= n) {
                return Err(SamplerError::InvalidStart(format!("vertex {bad} is not in the graph")));
            }
            Ok((list.clone(), 0.0))
        }
        StartMode::Uniform | StartMode::DegreeProportional => {
            let mut spent = 0.0;
            let mut out = Vec::with_capacity(m);
            for _ in 0..m {
                spent += match cost.start_accounting {
                    StartCostAccounting::Expected => cost.effective_vertex_cost(),
                    StartCostAccounting::Stochastic => query_until_hit(cost.vertex_query_cost, cost.vertex_hit_ratio, rng),
                };
                out.push(match start {
                    StartMode::Uniform => rng.random_range(0..n) as VertexId,
                    _ => graph.edge(rng.random_range(0..graph.n_edges())).0,
                });
            }
            Ok((out, spent))
        }
    }
}

fn query_until_hit<R: Rng>(query_cost: f64, hit_ratio: f64, rng: &mut R) -> f64 {
    let mut spent = query_cost;
    while hit_ratio < 1.0 && rng.random::<f64>() >= hit_ratio {
        spent += query_cost;
    }
    spent
}

/// Uniform outgoing edge of `u`.
#[inline]
pub(crate) fn step_from<R: Rng>(graph: &Graph, u: VertexId, rng: &mut R) -> VertexId {
    let nb = graph.neighbors(u);
    nb[rng.random_range(0..nb.len())]
}

/// Drops the first `w` steps of every walker.
pub fn discard_burn_in(trace: &SampleTrace, w: usize) -> Result<SampleTrace, SamplerError> {
    if w == 0 {
        return Ok(trace.clone());
    }
    let counts = trace.steps_per_walker();
    if let Some((walker, &steps)) = counts.iter().enumerate().find(|(_, &c)| c <= w) {
        return Err(SamplerError::BurnInTooLong { w, walker: walker as u32, steps });
    }
    let mut seen = vec![0usize; counts.len()];
    let steps = trace
        .steps
        .iter()
        .filter(|s| {
            let k = &mut seen[s.walker as usize];
            *k += 1;
            *k > w
        })
        .copied()
        .collect();
    Ok(SampleTrace { steps, ..trace.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::rng::RngStream;

    #[test]
    fn cost_model_validation() {
        assert!(CostModel::default().validate().is_ok());
        let bad = CostModel { vertex_hit_ratio: 0.0, ..CostModel::default() };
        assert!(bad.validate().is_err());
        let bad = CostModel { walk_step_cost: -1.0, ..CostModel::default() };
        assert!(bad.validate().is_err());
        let c = CostModel { vertex_query_cost: 2.0, vertex_hit_ratio: 0.5, ..CostModel::default() };
        assert_eq!(c.start_cost(&StartMode::Uniform), 4.0);
        assert_eq!(c.start_cost(&StartMode::Explicit(vec![0])), 0.0);
    }

    #[test]
    fn method_names_round_trip() {
        for m in ["fs", "frontier", "rw", "mrw", "dfs", "rv", "re", "multiple_rw"] {
            let parsed: Method = m.parse().unwrap();
            assert_eq!(parsed.as_str().parse::<Method>().unwrap(), parsed);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn burn_in_single_walker() {
        let g = triangle_plus_pendant();
        let t = single_rw(&g, &StartMode::Explicit(vec![3]), 10.0, &CostModel::default(), &RngStream::new(4)).unwrap();
        assert_eq!(t.len(), 10);
        assert_eq!(discard_burn_in(&t, 0).unwrap(), t);
        let b = discard_burn_in(&t, 3).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(b.steps[0].u, t.steps[2].v);
        assert_eq!(b.budget, t.budget);
        assert!(matches!(discard_burn_in(&t, 10), Err(SamplerError::BurnInTooLong { .. })));
    }

    #[test]
    fn burn_in_per_walker() {
        let g = complete(5);
        let t = multiple_rw(&g, 4, &StartMode::Uniform, 40.0, &CostModel::default(), &RngStream::new(9)).unwrap();
        let before = t.steps_per_walker();
        let after = discard_burn_in(&t, 2).unwrap().steps_per_walker();
        assert!(before.iter().zip(&after).all(|(b, a)| b - a == 2));
    }

    #[test]
    fn stochastic_start_cost_at_least_query_cost() {
        let g = complete(4);
        let cost = CostModel { vertex_hit_ratio: 0.25, start_accounting: StartCostAccounting::Stochastic, ..CostModel::default() };
        let mut rng = RngStream::new(1).rng();
        let mut total = 0.0;
        for _ in 0..4000 {
            let (_, c) = place_walkers(&g, 1, &StartMode::Uniform, &cost, &mut rng).unwrap();
            assert!(c >= 1.0 && c.fract() == 0.0);
            total += c;
        }
        // Geometric with mean 4.
        assert!((total / 4000.0 - 4.0).abs() < 0.3);
    }

    #[test]
    fn explicit_start_validation() {
        let g = complete(3);
        let mut rng = RngStream::new(0).rng();
        let c = CostModel::default();
        assert!(place_walkers(&g, 2, &StartMode::Explicit(vec![0]), &c, &mut rng).is_err());
        assert!(place_walkers(&g, 1, &StartMode::Explicit(vec![7]), &c, &mut rng).is_err());
    }
}
