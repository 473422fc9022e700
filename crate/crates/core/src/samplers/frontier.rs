use rand::Rng;

use super::{affordable_steps, place_walkers, CostModel, Method, SampleTrace, SampledEdge, SamplerError, StartMode};
use crate::graph::{Graph, VertexId};
use crate::rng::RngStream;

/// Fenwick tree over walker degrees. One uniform draw in `0..sum` picks a
/// walker with probability `deg / sum` and, via the remainder, one of its
/// edges uniformly, which is a uniform draw over all frontier edges.
#[derive(Debug, Clone)]
struct DegreeTree {
    tree: Vec<u64>,
    top: usize,
}

impl DegreeTree {
    fn new(weights: &[u64]) -> Self {
        let n = weights.len();
        let mut tree = vec![0u64; n + 1];
        tree[1..].copy_from_slice(weights);
        for i in 1..=n {
            let j = i + (i & i.wrapping_neg());
            if j <= n {
                tree[j] += tree[i];
            }
        }
        let top = if n == 0 { 0 } else { 1 << (usize::BITS - 1 - n.leading_zeros()) };
        Self { tree, top }
    }

    fn add(&mut self, index: usize, delta: i64) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i].wrapping_add_signed(delta);
            i += i & i.wrapping_neg();
        }
    }

    /// Index `k` with `prefix(k) <= r < prefix(k + 1)` and `r - prefix(k)`.
    fn find(&self, mut r: u64) -> (usize, u64) {
        let mut pos = 0;
        let mut step = self.top;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= r {
                r -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        (pos, r)
    }
}

/// The walker multiset `L` of the Frontier sampler.
#[derive(Debug, Clone)]
pub struct FrontierState {
    walkers: Vec<VertexId>,
    degrees: DegreeTree,
    total: u64,
    steps: u64,
}

impl FrontierState {
    pub fn new(graph: &Graph, walkers: Vec<VertexId>) -> Self {
        assert!(!walkers.is_empty(), "frontier needs at least one walker");
        let w: Vec<u64> = walkers.iter().map(|&v| graph.degree(v) as u64).collect();
        let total = w.iter().sum();
        Self { walkers, degrees: DegreeTree::new(&w), total, steps: 0 }
    }

    pub fn walkers(&self) -> &[VertexId] {
        &self.walkers
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Sum of walker degrees, `|e(L)|`.
    pub fn frontier_size(&self) -> u64 {
        self.total
    }

    /// Picks a walker with probability `deg / sum deg`, moves it along a
    /// uniform edge and returns `(walker, u, v)`.
    pub fn step<R: Rng>(&mut self, graph: &Graph, rng: &mut R) -> (u32, VertexId, VertexId) {
        let (w, offset) = self.degrees.find(rng.random_range(0..self.total));
        let u = self.walkers[w];
        let v = graph.neighbors(u)[offset as usize];
        let delta = graph.degree(v) as i64 - graph.degree(u) as i64;
        self.degrees.add(w, delta);
        self.total = self.total.wrapping_add_signed(delta);
        self.walkers[w] = v;
        self.steps += 1;
        (w as u32, u, v)
    }
}

/// Frontier sampling: `m` dependent walkers, one moving per step, for
/// `floor(B - m c)` steps.
pub fn frontier_sampling(
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
    let expected = budget - m as f64 * cost.start_cost(start);
    if affordable_steps(expected, cost.walk_step_cost) < 1 {
        return Err(SamplerError::InsufficientBudget(format!("{budget} does not cover {m} starts and one step")));
    }
    let mut rng = stream.rng();
    let (starts, start_cost) = place_walkers(graph, m, start, cost, &mut rng)?;
    let n = affordable_steps(budget - start_cost, cost.walk_step_cost);
    if n < 1 {
        return Err(SamplerError::InsufficientBudget(format!("starts consumed {start_cost} of {budget}")));
    }
    let mut state = FrontierState::new(graph, starts.clone());
    let steps = (0..n)
        .map(|_| {
            let (walker, u, v) = state.step(graph, &mut rng);
            SampledEdge { walker, u, v, cost: cost.walk_step_cost, time: None }
        })
        .collect();
    Ok(SampleTrace {
        method: Method::Frontier,
        m,
        start_vertices: starts,
        steps,
        budget,
        spent: start_cost + n as f64 * cost.walk_step_cost,
    })
}
