use rand::Rng;

use super::{CostModel, Method, SampleTrace, SampledEdge, SamplerError, VertexTrace};
use crate::graph::Graph;
use crate::rng::RngStream;

/// Uniform vertices with replacement. Each query costs `vertex_query_cost`
/// and returns a valid vertex with probability `vertex_hit_ratio`; only hits
/// are recorded.
pub fn random_vertex_sample(graph: &Graph, budget: f64, cost: &CostModel, stream: &RngStream) -> Result<VertexTrace, SamplerError> {
    cost.validate()?;
    let c = cost.vertex_query_cost;
    if budget < c {
        return Err(SamplerError::InsufficientBudget(format!("{budget} is below one query ({c})")));
    }
    let mut rng = stream.rng();
    let (mut vertices, mut costs) = (Vec::new(), Vec::new());
    let (mut spent, mut pending) = (0.0, 0.0);
    while spent + c <= budget + 1e-9 {
        spent += c;
        pending += c;
        if cost.vertex_hit_ratio >= 1.0 || rng.random::<f64>() < cost.vertex_hit_ratio {
            vertices.push(rng.random_range(0..graph.n_vertices()) as u32);
            costs.push(pending);
            pending = 0.0;
        }
    }
    Ok(VertexTrace { vertices, costs, budget, spent })
}

/// Uniform directed edges with replacement, thinned by `edge_hit_ratio`.
pub fn random_edge_sample(graph: &Graph, budget: f64, cost: &CostModel, stream: &RngStream) -> Result<SampleTrace, SamplerError> {
    cost.validate()?;
    let c = cost.edge_sample_cost;
    if budget < c {
        return Err(SamplerError::InsufficientBudget(format!("{budget} is below one edge query ({c})")));
    }
    let mut rng = stream.rng();
    let mut steps = Vec::new();
    let (mut spent, mut pending) = (0.0, 0.0);
    while spent + c <= budget + 1e-9 {
        spent += c;
        pending += c;
        if cost.edge_hit_ratio >= 1.0 || rng.random::<f64>() < cost.edge_hit_ratio {
            let (u, v) = graph.edge(rng.random_range(0..graph.n_edges()));
            steps.push(SampledEdge { walker: 0, u, v, cost: pending, time: None });
            pending = 0.0;
        }
    }
    Ok(SampleTrace { method: Method::RandomEdge, m: 1, start_vertices: Vec::new(), steps, budget, spent })
}
