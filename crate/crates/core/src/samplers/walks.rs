use super::{affordable_steps, place_walkers, step_from, CostModel, Method, SampleTrace, SampledEdge, SamplerError, StartMode};
use crate::graph::Graph;
use crate::rng::RngStream;

/// A single random walk; the `m = 1` case of [`multiple_rw`].
pub fn single_rw(graph: &Graph, start: &StartMode, budget: f64, cost: &CostModel, stream: &RngStream) -> Result<SampleTrace, SamplerError> {
    let mut trace = multiple_rw(graph, 1, start, budget, cost, stream)?;
    trace.method = Method::SingleRw;
    Ok(trace)
}

/// `m` independent walks, each given `B/m` of the budget. Walker `w` draws
/// from its own child stream, so results do not depend on `m`'s split order.
pub fn multiple_rw(
    graph: &Graph,
    m: usize,
    start: &StartMode,
    budget: f64,
    cost: &CostModel,
    stream: &RngStream,
) -> Result<SampleTrace, SamplerError> {
    cost.validate()?;
    if m == 0 {
        return Err(SamplerError::InvalidParameter("need at least one walker".into()));
    }
    if let StartMode::Explicit(list) = start {
        if list.len() != m {
            return Err(SamplerError::InvalidStart(format!("{} explicit starts for {m} walkers", list.len())));
        }
    }
    let share = budget / m as f64;
    if affordable_steps(share - cost.start_cost(start), cost.walk_step_cost) < 1 {
        return Err(SamplerError::InsufficientBudget(format!(
            "per-walker budget {share} leaves no step after a start cost of {}",
            cost.start_cost(start)
        )));
    }

    let mut starts = Vec::with_capacity(m);
    let mut steps = Vec::new();
    let mut spent = 0.0;
    for w in 0..m {
        let mut rng = stream.child(w as u64).rng();
        let own = match start {
            StartMode::Explicit(list) => StartMode::Explicit(vec![list[w]]),
            other => other.clone(),
        };
        let (placed, start_cost) = place_walkers(graph, 1, &own, cost, &mut rng)?;
        let n = affordable_steps(share - start_cost, cost.walk_step_cost);
        if n < 1 {
            return Err(SamplerError::InsufficientBudget(format!("walker {w} spent {start_cost} on its start")));
        }
        let mut at = placed[0];
        starts.push(at);
        for _ in 0..n {
            let next = step_from(graph, at, &mut rng);
            steps.push(SampledEdge { walker: w as u32, u: at, v: next, cost: cost.walk_step_cost, time: None });
            at = next;
        }
        spent += start_cost + n as f64 * cost.walk_step_cost;
    }
    Ok(SampleTrace { method: Method::MultipleRw, m, start_vertices: starts, steps, budget, spent })
}
