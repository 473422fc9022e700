//! Graph data model.
//!
//! A [`Graph`] holds the symmetric directed graph `G` obtained by mirroring
//! every edge of the original directed graph `G_d`. Adjacency is stored in
//! compressed form (one sorted neighbor slice per vertex) and every symmetric
//! edge carries a flag telling whether it also exists in `G_d`.

mod components;
mod generators;
mod io;
mod labels;

pub use components::{connected_components, restrict_to_lcc, VertexPartition};
pub use generators::{generate_barabasi_albert, generate_joined_ba, JoinedBa};
pub use io::{load_directed_edge_list, load_edge_labels, load_vertex_labels, LabelLoad};
pub use labels::{degree_label, DegreeMode, LabelId, LabelStore};

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Dense vertex index, `0 <= id < n_vertices`.
pub type VertexId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge list is empty")]
    Empty,
    #[error("graph has no edges once self-loops are removed")]
    NoEdges,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Directed pairs over dense ids plus the table mapping each dense id back to
/// the id used in the source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub pairs: Vec<(VertexId, VertexId)>,
    pub ids: Vec<u64>,
}

impl EdgeList {
    /// Pairs already expressed with dense ids; the id table is the identity
    /// over `0..=max`.
    pub fn from_dense(pairs: Vec<(VertexId, VertexId)>) -> Self {
        let n = pairs.iter().map(|&(u, v)| u.max(v) as u64 + 1).max().unwrap_or(0);
        Self { pairs, ids: (0..n).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    sources: Vec<VertexId>,
    original: Vec<bool>,
    out_deg_d: Vec<u32>,
    in_deg_d: Vec<u32>,
    ids: Vec<u64>,
}

impl Graph {
    /// Builds `G` from the directed pairs of `G_d`. Self-loops and duplicate
    /// pairs are dropped; vertices left without any edge are removed and the
    /// remaining ids re-densified in their original order.
    pub fn build(edges: &EdgeList) -> Result<Self, GraphError> {
        if edges.pairs.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut directed: Vec<(VertexId, VertexId)> = edges.pairs.iter().copied().filter(|&(u, v)| u != v).collect();
        if directed.is_empty() {
            return Err(GraphError::NoEdges);
        }
        directed.sort_unstable();
        directed.dedup();

        let n_ids = edges.ids.len().max(directed.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0));
        let mut used = vec![false; n_ids];
        for &(u, v) in &directed {
            used[u as usize] = true;
            used[v as usize] = true;
        }
        let mut remap = vec![VertexId::MAX; n_ids];
        let mut ids = Vec::new();
        for (old, _) in used.iter().enumerate().filter(|(_, &u)| u) {
            remap[old] = ids.len() as VertexId;
            ids.push(edges.ids.get(old).copied().unwrap_or(old as u64));
        }
        if ids.len() != n_ids {
            for e in directed.iter_mut() {
                *e = (remap[e.0 as usize], remap[e.1 as usize]);
            }
            directed.sort_unstable();
        }
        Ok(Self::from_directed_sorted(&directed, ids))
    }

    /// `directed` must be sorted, free of self-loops and duplicates, and every
    /// id in `0..ids.len()` must appear.
    fn from_directed_sorted(directed: &[(VertexId, VertexId)], ids: Vec<u64>) -> Self {
        let n = ids.len();
        let mut out_deg_d = vec![0u32; n];
        let mut in_deg_d = vec![0u32; n];
        let mut sym: Vec<(VertexId, VertexId, bool)> = Vec::with_capacity(directed.len() * 2);
        for &(u, v) in directed {
            out_deg_d[u as usize] += 1;
            in_deg_d[v as usize] += 1;
            sym.push((u, v, true));
            sym.push((v, u, false));
        }
        // An edge is original if any copy of it came from G_d.
        sym.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(b.2.cmp(&a.2)));
        sym.dedup_by(|next, kept| next.0 == kept.0 && next.1 == kept.1);

        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in &sym {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Self {
            offsets,
            sources: sym.iter().map(|e| e.0).collect(),
            neighbors: sym.iter().map(|e| e.1).collect(),
            original: sym.iter().map(|e| e.2).collect(),
            out_deg_d,
            in_deg_d,
            ids,
        }
    }

    pub fn from_pairs(pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::build(&EdgeList::from_dense(pairs.to_vec()))
    }

    /// Undirected input: every pair is added in both orientations to `G_d`.
    pub fn from_undirected(pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let both = pairs.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Self::build(&EdgeList::from_dense(both))
    }

    pub fn n_vertices(&self) -> usize {
        self.ids.len()
    }

    /// `|E|`, the number of directed edges of the symmetric graph.
    pub fn n_edges(&self) -> usize {
        self.neighbors.len()
    }

    /// `vol(V) = sum of deg(v) = |E|`.
    pub fn volume(&self) -> usize {
        self.neighbors.len()
    }

    pub fn volume_of(&self, subset: &[VertexId]) -> usize {
        subset.iter().map(|&v| self.degree(v)).sum()
    }

    pub fn average_degree(&self) -> f64 {
        self.volume() as f64 / self.n_vertices() as f64
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn out_degree_d(&self, v: VertexId) -> u32 {
        self.out_deg_d[v as usize]
    }

    pub fn in_degree_d(&self, v: VertexId) -> u32 {
        self.in_deg_d[v as usize]
    }

    pub fn degree_in_mode(&self, v: VertexId, mode: DegreeMode) -> usize {
        match mode {
            DegreeMode::Symmetric => self.degree(v),
            DegreeMode::InDirected => self.in_degree_d(v) as usize,
            DegreeMode::OutDirected => self.out_degree_d(v) as usize,
        }
    }

    /// Sorted neighbors of `v` in the symmetric graph.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.n_vertices() as VertexId
    }

    /// Position of `(u, v)` in the edge array, if the edge exists.
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        if u as usize >= self.n_vertices() {
            return None;
        }
        let base = self.offsets[u as usize];
        self.neighbors(u).binary_search(&v).ok().map(|k| base + k)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Endpoints of the edge stored at `index` (`0..n_edges()`).
    pub fn edge(&self, index: usize) -> (VertexId, VertexId) {
        (self.sources[index], self.neighbors[index])
    }

    /// Whether the symmetric edge at `index` is an edge of `G_d`.
    pub fn is_original(&self, index: usize) -> bool {
        self.original[index]
    }

    pub fn is_original_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index(u, v).is_some_and(|i| self.original[i])
    }

    /// Every symmetric edge `(u, v)` in storage order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.sources.iter().copied().zip(self.neighbors.iter().copied())
    }

    /// The edges of `G_d`, sorted.
    pub fn directed_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges().zip(&self.original).filter(|(_, &o)| o).map(|(e, _)| e)
    }

    pub fn n_directed_edges(&self) -> usize {
        self.original.iter().filter(|&&o| o).count()
    }

    /// True when `G_d` is itself symmetric (an undirected input).
    pub fn is_undirected(&self) -> bool {
        self.original.iter().all(|&o| o)
    }

    /// Id the vertex had in the source file.
    pub fn original_id(&self, v: VertexId) -> u64 {
        self.ids[v as usize]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.ids
    }

    /// Reverse lookup of [`Graph::original_id`].
    pub fn dense_id(&self, original: u64) -> Option<VertexId> {
        // Ids are usually the identity; fall back to a scan otherwise.
        if let Some(&id) = self.ids.get(original as usize) {
            if id == original {
                return Some(original as VertexId);
            }
        }
        self.ids.iter().position(|&x| x == original).map(|p| p as VertexId)
    }

    /// Sorted `G_d` edge list, one `"u v"` line each, using original ids.
    pub fn canonical_text(&self) -> String {
        let mut pairs: Vec<(u64, u64)> = self.directed_edges().map(|(u, v)| (self.original_id(u), self.original_id(v))).collect();
        pairs.sort_unstable();
        let mut out = String::with_capacity(pairs.len() * 12);
        for (u, v) in pairs {
            out.push_str(&u.to_string());
            out.push(' ');
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Hex SHA-256 of [`Graph::canonical_text`].
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }

    /// Induced subgraph on `keep` (sorted dense ids); `G_d` edges with both
    /// endpoints kept survive and original ids are carried over.
    pub(crate) fn induced(&self, keep: &[VertexId]) -> Result<Self, GraphError> {
        let mut remap = vec![VertexId::MAX; self.n_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            remap[v as usize] = i as VertexId;
        }
        let pairs: Vec<(VertexId, VertexId)> = self
            .directed_edges()
            .filter(|&(u, v)| remap[u as usize] != VertexId::MAX && remap[v as usize] != VertexId::MAX)
            .map(|(u, v)| (remap[u as usize], remap[v as usize]))
            .collect();
        let ids = keep.iter().map(|&v| self.original_id(v)).collect();
        Self::build(&EdgeList { pairs, ids })
    }
}
