//! Synthetic graph generators.

use rand::Rng;

use super::{Graph, GraphError, VertexId};
use crate::rng::RngStream;

/// Undirected Barabási–Albert graph on `n` vertices: a clique on the first
/// `attach + 1` vertices, then every new vertex links to `attach` distinct
/// existing vertices chosen with probability proportional to degree.
pub fn generate_barabasi_albert(n: usize, attach: usize, stream: &RngStream) -> Result<Graph, GraphError> {
    Graph::from_undirected(&ba_edges(n, attach, stream)?)
}

fn ba_edges(n: usize, attach: usize, stream: &RngStream) -> Result<Vec<(VertexId, VertexId)>, GraphError> {
    if attach == 0 || n <= attach {
        return Err(GraphError::InvalidParameter(format!("Barabási–Albert needs n > attach >= 1 (got n = {n}, attach = {attach})")));
    }
    let mut rng = stream.rng();
    let seed_size = attach + 1;
    let mut edges = Vec::with_capacity(seed_size * attach / 2 + (n - seed_size) * attach);
    // Each endpoint appears once per incident edge: uniform picks from this
    // list are degree-proportional.
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..seed_size as VertexId {
        for v in u + 1..seed_size as VertexId {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets: Vec<VertexId> = Vec::with_capacity(attach);
    for t in seed_size as VertexId..n as VertexId {
        targets.clear();
        while targets.len() < attach {
            let pick = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for &w in &targets {
            edges.push((t, w));
            endpoints.extend([t, w]);
        }
    }
    Ok(edges)
}

/// Two independent BA graphs joined by one bridge edge.
#[derive(Debug, Clone)]
pub struct JoinedBa {
    pub graph: Graph,
    /// Vertices `0..n_each` form `G_A`; `n_each..2 n_each` form `G_B`.
    pub n_each: usize,
    pub bridge: (VertexId, VertexId),
    pub edges_a: usize,
    pub edges_b: usize,
}

impl JoinedBa {
    pub fn side_a(&self) -> Vec<VertexId> {
        (0..self.n_each as VertexId).collect()
    }
}

/// `G_AB`: BA graphs `G_A` (attach `attach_a`) and `G_B` (attach `attach_b`)
/// with `n_each` vertices each, bridged between a minimum-degree vertex of
/// each side. Ties on minimum degree go to the smallest id.
pub fn generate_joined_ba(n_each: usize, attach_a: usize, attach_b: usize, stream: &RngStream) -> Result<JoinedBa, GraphError> {
    let a = ba_edges(n_each, attach_a, &stream.child(0))?;
    let b = ba_edges(n_each, attach_b, &stream.child(1))?;
    let offset = n_each as VertexId;
    let min_degree_vertex = |edges: &[(VertexId, VertexId)]| {
        let mut deg = vec![0usize; n_each];
        for &(u, v) in edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let min = *deg.iter().min().expect("n_each > 0");
        deg.iter().position(|&d| d == min).expect("minimum exists") as VertexId
    };
    let bridge = (min_degree_vertex(&a), min_degree_vertex(&b) + offset);
    let (edges_a, edges_b) = (a.len(), b.len());
    let mut all = a;
    all.extend(b.into_iter().map(|(u, v)| (u + offset, v + offset)));
    all.push(bridge);
    Ok(JoinedBa { graph: Graph::from_undirected(&all)?, n_each, bridge, edges_a, edges_b })
}
