use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rand_distr::{Distribution, Exp};

use super::{place_walkers, step_from, CostModel, Method, SampleTrace, SampledEdge, SamplerError, StartMode};
use crate::graph::Graph;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Event {
    time: f64,
    walker: u32,
}

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time.total_cmp(&other.time).then(self.walker.cmp(&other.walker))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn holding_time<R: rand::Rng>(degree: usize, rng: &mut R) -> f64 {
    Exp::new(degree as f64).expect("degree is positive").sample(rng)
}

/// Continuous-time Frontier sampling: each walker waits `Exp(deg(v))` at
/// `v`, then moves along a uniform edge. Jumps are recorded in event-time
/// order up to `time_budget`; each step's cost is the holding time it ended.
/// Start placement is free here since the budget is time, not queries.
pub fn distributed_fs(
    graph: &Graph,
    m: usize,
    time_budget: f64,
    start: &StartMode,
    stream: &RngStream,
) -> Result<SampleTrace, SamplerError> {
    if m == 0 {
        return Err(SamplerError::InvalidParameter("need at least one walker".into()));
    }
    if !(time_budget > 0.0 && time_budget.is_finite()) {
        return Err(SamplerError::InvalidParameter(format!("time budget {time_budget} must be positive")));
    }
    let (starts, _) = place_walkers(graph, m, start, &CostModel::default(), &mut stream.rng())?;
    let mut rngs: Vec<_> = (0..m).map(|w| stream.child(w as u64).rng()).collect();
    let mut at = starts.clone();
    let mut since = vec![0.0; m];
    let mut queue: BinaryHeap<Reverse<Event>> =
        (0..m).map(|w| Reverse(Event { time: holding_time(graph.degree(at[w]), &mut rngs[w]), walker: w as u32 })).collect();

    let mut steps = Vec::new();
    while let Some(Reverse(Event { time, walker })) = queue.pop() {
        if time > time_budget {
            break;
        }
        let w = walker as usize;
        let u = at[w];
        let v = step_from(graph, u, &mut rngs[w]);
        steps.push(SampledEdge { walker, u, v, cost: time - since[w], time: Some(time) });
        at[w] = v;
        since[w] = time;
        queue.push(Reverse(Event { time: time + holding_time(graph.degree(v), &mut rngs[w]), walker }));
    }
    Ok(SampleTrace { method: Method::DistributedFrontier, m, start_vertices: starts, steps, budget: time_budget, spent: time_budget })
}
