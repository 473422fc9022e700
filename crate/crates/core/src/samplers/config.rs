use serde::{Deserialize, Serialize};

use super::{
    affordable_steps, distributed_fs, frontier_sampling, multiple_rw, random_edge_sample, random_vertex_sample, single_rw, CostModel,
    Method, SampleTrace, SamplerError, StartMode, VertexTrace,
};
use crate::graph::Graph;
use crate::rng::RngStream;

/// Output of any sampler.
#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Edges(SampleTrace),
    Vertices(VertexTrace),
}

impl Sample {
    pub fn edges(&self) -> Option<&SampleTrace> {
        match self {
            Sample::Edges(t) => Some(t),
            Sample::Vertices(_) => None,
        }
    }
}

fn one() -> usize {
    1
}

/// Method plus parameters; `budget` is supplied at run time (for the
/// distributed sampler it is a time budget).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    pub method: Method,
    #[serde(default = "one")]
    pub m: usize,
    #[serde(default)]
    pub start: StartMode,
    #[serde(default)]
    pub cost: CostModel,
}

impl SamplerConfig {
    pub fn new(method: Method, m: usize) -> Self {
        Self { method, m, start: StartMode::default(), cost: CostModel::default() }
    }

    /// Short label such as `fs(m=10)`.
    pub fn label(&self) -> String {
        match self.method {
            Method::MultipleRw | Method::Frontier | Method::DistributedFrontier => format!("{}(m={})", self.method, self.m),
            _ => self.method.to_string(),
        }
    }

    /// Rejects budgets that cannot buy a single sample, using expected start
    /// costs.
    pub fn check_budget(&self, graph: &Graph, budget: f64) -> Result<(), SamplerError> {
        self.cost.validate()?;
        if let StartMode::Explicit(list) = &self.start {
            if list.len() != self.m || list.iter().any(|&v| v as usize >= graph.n_vertices()) {
                return Err(SamplerError::InvalidStart(format!("explicit starts {list:?} do not fit {} walkers", self.m)));
            }
        }
        if self.m == 0 {
            return Err(SamplerError::InvalidParameter("need at least one walker".into()));
        }
        let c = &self.cost;
        let start = c.start_cost(&self.start);
        let (m, ok) = (self.m as f64, |rem: f64, unit: f64| affordable_steps(rem, unit) >= 1);
        let feasible = match self.method {
            Method::RandomVertex => ok(budget, c.vertex_query_cost),
            Method::RandomEdge => ok(budget, c.edge_sample_cost),
            Method::SingleRw => self.m == 1 && ok(budget - start, c.walk_step_cost),
            Method::MultipleRw => ok(budget / m - start, c.walk_step_cost),
            Method::Frontier => ok(budget - m * start, c.walk_step_cost),
            Method::DistributedFrontier => budget > 0.0 && budget.is_finite(),
        };
        if feasible {
            Ok(())
        } else {
            Err(SamplerError::InsufficientBudget(format!("budget {budget} is infeasible for {}", self.label())))
        }
    }

    /// Steps each walker is guaranteed (expected, for the frontier sampler).
    pub fn steps_per_walker(&self, budget: f64) -> f64 {
        let c = &self.cost;
        let start = c.start_cost(&self.start);
        let m = self.m as f64;
        match self.method {
            Method::RandomVertex => (budget / c.vertex_query_cost).floor(),
            Method::RandomEdge => (budget / c.edge_sample_cost).floor(),
            Method::SingleRw | Method::MultipleRw => affordable_steps(budget / m - start, c.walk_step_cost) as f64,
            Method::Frontier => affordable_steps(budget - m * start, c.walk_step_cost) as f64 / m,
            Method::DistributedFrontier => f64::INFINITY,
        }
    }

    pub fn run(&self, graph: &Graph, budget: f64, stream: &RngStream) -> Result<Sample, SamplerError> {
        let (g, s, c) = (graph, stream, &self.cost);
        Ok(match self.method {
            Method::RandomVertex => Sample::Vertices(random_vertex_sample(g, budget, c, s)?),
            Method::RandomEdge => Sample::Edges(random_edge_sample(g, budget, c, s)?),
            Method::SingleRw => {
                if self.m != 1 {
                    return Err(SamplerError::InvalidParameter("a single walk has m = 1".into()));
                }
                Sample::Edges(single_rw(g, &self.start, budget, c, s)?)
            }
            Method::MultipleRw => Sample::Edges(multiple_rw(g, self.m, &self.start, budget, c, s)?),
            Method::Frontier => Sample::Edges(frontier_sampling(g, self.m, &self.start, budget, c, s)?),
            Method::DistributedFrontier => Sample::Edges(distributed_fs(g, self.m, budget, &self.start, s)?),
        })
    }
}
