use std::collections::VecDeque;

use super::{Graph, LabelStore, VertexId};

/// Connected components of the symmetric graph. Component `c` is the one
/// whose smallest vertex id is the `c`-th smallest among component minima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    pub component: Vec<u32>,
    pub sizes: Vec<usize>,
    pub volumes: Vec<usize>,
}

impl VertexPartition {
    pub fn n_components(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_connected(&self) -> bool {
        self.sizes.len() == 1
    }

    /// Largest component; ties go to the smaller component id.
    pub fn largest(&self) -> u32 {
        let mut best = 0;
        for (c, &s) in self.sizes.iter().enumerate() {
            if s > self.sizes[best] {
                best = c;
            }
        }
        best as u32
    }

    pub fn members(&self, c: u32) -> Vec<VertexId> {
        self.component.iter().enumerate().filter(|(_, &x)| x == c).map(|(v, _)| v as VertexId).collect()
    }
}

pub fn connected_components(graph: &Graph) -> VertexPartition {
    let n = graph.n_vertices();
    let mut component = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut volumes = Vec::new();
    let mut queue = VecDeque::new();
    for s in graph.vertices() {
        if component[s as usize] != u32::MAX {
            continue;
        }
        let c = sizes.len() as u32;
        let (mut size, mut vol) = (0, 0);
        component[s as usize] = c;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            size += 1;
            vol += graph.degree(u);
            for &w in graph.neighbors(u) {
                if component[w as usize] == u32::MAX {
                    component[w as usize] = c;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
        volumes.push(vol);
    }
    VertexPartition { component, sizes, volumes }
}

/// Induced subgraph on the largest connected component, with labels filtered
/// and renumbered to match. A connected graph comes back unchanged.
pub fn restrict_to_lcc(graph: &Graph, labels: &LabelStore) -> (Graph, LabelStore) {
    let parts = connected_components(graph);
    if parts.is_connected() {
        return (graph.clone(), labels.clone());
    }
    let keep = parts.members(parts.largest());
    let sub = graph.induced(&keep).expect("a component with >= 2 vertices has edges");
    (sub, labels.restrict(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::triangle_plus_pendant;

    #[test]
    fn single_component() {
        let p = connected_components(&triangle_plus_pendant());
        assert_eq!(p.sizes, vec![4]);
        assert_eq!(p.volumes, vec![8]);
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::from_undirected(&[(0, 1), (2, 3)]).unwrap();
        let p = connected_components(&g);
        assert_eq!(p.sizes, vec![2, 2]);
        assert_eq!(p.component, vec![0, 0, 1, 1]);
    }

    #[test]
    fn lcc_of_connected_is_identity() {
        let g = triangle_plus_pendant();
        let mut labels = LabelStore::new(4);
        labels.add_vertex_label(3, "x");
        let (h, l) = restrict_to_lcc(&g, &labels);
        assert_eq!(h, g);
        assert_eq!(l, labels);
    }

    #[test]
    fn lcc_picks_triangle_over_edge() {
        let g = Graph::from_undirected(&[(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        let mut labels = LabelStore::new(5);
        labels.add_vertex_label(0, "gone");
        labels.add_vertex_label(4, "kept");
        labels.add_edge_label(0, 1, "gone-edge");
        labels.add_edge_label(2, 3, "kept-edge");
        let (h, l) = restrict_to_lcc(&g, &labels);
        assert_eq!(h.n_vertices(), 3);
        assert_eq!(h.original_ids(), &[2, 3, 4]);
        assert!(connected_components(&h).is_connected());
        assert!(l.vertex_labels(0).is_empty());
        assert_eq!(l.vertex_labels(2), &[l.label_id("kept").unwrap()]);
        assert_eq!(l.labelled_edges().len(), 1);
        assert!(l.edge_has(0, 1, l.label_id("kept-edge").unwrap()));
    }

    #[test]
    fn lcc_tie_keeps_component_of_vertex_zero() {
        let g = Graph::from_undirected(&[(2, 3), (0, 1)]).unwrap();
        let (h, _) = restrict_to_lcc(&g, &LabelStore::new(4));
        assert_eq!(h.original_ids(), &[0, 1]);
    }
}
