use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};

pub type LabelId = u32;

/// Which degree notion a degree label or CCDF refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMode {
    #[default]
    Symmetric,
    InDirected,
    OutDirected,
}

impl std::str::FromStr for DegreeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symmetric" | "sym" => Ok(Self::Symmetric),
            "in" | "in_directed" | "in-directed" => Ok(Self::InDirected),
            "out" | "out_directed" | "out-directed" => Ok(Self::OutDirected),
            other => Err(format!("unknown degree mode `{other}`")),
        }
    }
}

/// Vertex and edge label sets. A missing entry is the empty set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabelStore {
    vertex_labels: Vec<Vec<LabelId>>,
    edge_labels: HashMap<(VertexId, VertexId), Vec<LabelId>>,
    names: Vec<String>,
    by_name: HashMap<String, LabelId>,
}

impl LabelStore {
    pub fn new(n_vertices: usize) -> Self {
        Self { vertex_labels: vec![Vec::new(); n_vertices], ..Self::default() }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn n_labels(&self) -> usize {
        self.names.len()
    }

    pub fn intern(&mut self, name: &str) -> LabelId {
        if let Some(&id) = self.by_name.get(name) {
            return id;
        }
        let id = self.names.len() as LabelId;
        self.names.push(name.to_owned());
        self.by_name.insert(name.to_owned(), id);
        id
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.names[id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains_label(&self, id: LabelId) -> bool {
        (id as usize) < self.names.len()
    }

    pub fn add_vertex_label(&mut self, v: VertexId, name: &str) -> LabelId {
        let id = self.intern(name);
        let set = &mut self.vertex_labels[v as usize];
        if let Err(pos) = set.binary_search(&id) {
            set.insert(pos, id);
        }
        id
    }

    pub fn add_edge_label(&mut self, u: VertexId, v: VertexId, name: &str) -> LabelId {
        let id = self.intern(name);
        let set = self.edge_labels.entry((u, v)).or_default();
        if let Err(pos) = set.binary_search(&id) {
            set.insert(pos, id);
        }
        id
    }

    pub fn vertex_labels(&self, v: VertexId) -> &[LabelId] {
        self.vertex_labels.get(v as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertex_has(&self, v: VertexId, l: LabelId) -> bool {
        self.vertex_labels(v).binary_search(&l).is_ok()
    }

    pub fn edge_labels(&self, u: VertexId, v: VertexId) -> &[LabelId] {
        self.edge_labels.get(&(u, v)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edge_has(&self, u: VertexId, v: VertexId, l: LabelId) -> bool {
        self.edge_labels(u, v).binary_search(&l).is_ok()
    }

    pub fn has_edge_labels(&self) -> bool {
        self.edge_labels.values().any(|s| !s.is_empty())
    }

    /// Labelled edges, sorted.
    pub fn labelled_edges(&self) -> BTreeMap<(VertexId, VertexId), &[LabelId]> {
        self.edge_labels.iter().filter(|(_, s)| !s.is_empty()).map(|(&k, s)| (k, s.as_slice())).collect()
    }

    /// One label `degree=k` per vertex, `k` taken in the given degree mode.
    pub fn degree_labels(graph: &Graph, mode: DegreeMode) -> Self {
        let mut store = Self::new(graph.n_vertices());
        for v in graph.vertices() {
            store.add_vertex_label(v, &degree_label(graph.degree_in_mode(v, mode)));
        }
        store
    }

    /// Keeps only the vertices in `keep` (sorted, old dense ids), renumbering
    /// them `0..keep.len()`. Edge labels with a dropped endpoint are removed.
    pub(crate) fn restrict(&self, keep: &[VertexId]) -> Self {
        let mut remap = HashMap::with_capacity(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            remap.insert(v, i as VertexId);
        }
        let vertex_labels = keep.iter().map(|&v| self.vertex_labels(v).to_vec()).collect();
        let edge_labels =
            self.edge_labels.iter().filter_map(|(&(u, v), set)| Some(((*remap.get(&u)?, *remap.get(&v)?), set.clone()))).collect();
        Self { vertex_labels, edge_labels, names: self.names.clone(), by_name: self.by_name.clone() }
    }
}

pub fn degree_label(k: usize) -> String {
    format!("degree={k}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::triangle_plus_pendant;

    #[test]
    fn intern_is_stable() {
        let mut s = LabelStore::new(2);
        let a = s.add_vertex_label(0, "g1");
        let b = s.add_vertex_label(1, "g2");
        assert_eq!(s.add_vertex_label(1, "g1"), a);
        assert_eq!(s.vertex_labels(1), &[a, b]);
        assert_eq!(s.name(b), "g2");
        assert!(s.vertex_labels(5).is_empty());
    }

    #[test]
    fn degree_labels_cover_every_vertex() {
        let g = triangle_plus_pendant();
        let s = LabelStore::degree_labels(&g, DegreeMode::Symmetric);
        let two = s.label_id("degree=2").unwrap();
        assert_eq!(g.vertices().filter(|&v| s.vertex_has(v, two)).count(), 2);
    }

    #[test]
    fn edge_labels_default_empty() {
        let mut s = LabelStore::new(3);
        s.add_edge_label(0, 1, "x");
        assert!(s.edge_has(0, 1, 0));
        assert!(s.edge_labels(1, 0).is_empty());
        assert_eq!(s.labelled_edges().len(), 1);
    }
}
