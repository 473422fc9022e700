use std::collections::HashMap;
use std::io::BufRead;

use super::{EdgeList, Graph, GraphError, LabelStore, VertexId};

fn parse_id(token: &str, line: usize) -> Result<u64, GraphError> {
    token.parse::<u64>().map_err(|_| GraphError::Parse { line, message: format!("`{token}` is not a non-negative integer vertex id") })
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String), GraphError>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(GraphError::Io(e))),
        Ok(l) => {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, t.to_owned())))
            }
        }
    })
}

/// Reads `u v` lines (`#` starts a comment line). Ids are remapped to dense
/// indices in order of first appearance.
pub fn load_directed_edge_list<R: BufRead>(reader: R) -> Result<EdgeList, GraphError> {
    let mut index: HashMap<u64, VertexId> = HashMap::new();
    let mut ids = Vec::new();
    let mut pairs = Vec::new();
    let mut dense = |raw: u64| -> VertexId {
        *index.entry(raw).or_insert_with(|| {
            ids.push(raw);
            (ids.len() - 1) as VertexId
        })
    };
    for item in content_lines(reader) {
        let (line, text) = item?;
        let mut tokens = text.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(GraphError::Parse { line, message: "expected exactly two vertex ids".into() });
        };
        let (u, v) = (parse_id(a, line)?, parse_id(b, line)?);
        pairs.push((dense(u), dense(v)));
    }
    if pairs.is_empty() {
        return Err(GraphError::Empty);
    }
    Ok(EdgeList { pairs, ids })
}

/// Result of reading a label file: unknown ids are skipped and reported.
#[derive(Debug, Clone, Default)]
pub struct LabelLoad {
    pub labels: LabelStore,
    pub warnings: Vec<String>,
}

/// Reads `v label1 label2 ...` lines keyed by original vertex ids.
pub fn load_vertex_labels<R: BufRead>(reader: R, graph: &Graph) -> Result<LabelLoad, GraphError> {
    let mut out = LabelLoad { labels: LabelStore::new(graph.n_vertices()), warnings: Vec::new() };
    let index = original_index(graph);
    for item in content_lines(reader) {
        let (line, text) = item?;
        let mut tokens = text.split_whitespace();
        let raw = parse_id(tokens.next().expect("non-empty line"), line)?;
        let Some(&v) = index.get(&raw) else {
            out.warnings.push(format!("line {line}: vertex {raw} is not in the graph; skipped"));
            continue;
        };
        for label in tokens {
            out.labels.add_vertex_label(v, label);
        }
    }
    Ok(out)
}

/// Reads `u v label1 ...` lines into `labels`; returns warnings for edges
/// that are not in the symmetric graph.
pub fn load_edge_labels<R: BufRead>(reader: R, graph: &Graph, labels: &mut LabelStore) -> Result<Vec<String>, GraphError> {
    let index = original_index(graph);
    let mut warnings = Vec::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let mut tokens = text.split_whitespace();
        let Some(b) = tokens.clone().nth(1) else {
            return Err(GraphError::Parse { line, message: "expected `u v label...`".into() });
        };
        let raw_u = parse_id(tokens.next().expect("non-empty line"), line)?;
        let raw_v = parse_id(b, line)?;
        tokens.next();
        match (index.get(&raw_u), index.get(&raw_v)) {
            (Some(&u), Some(&v)) if graph.has_edge(u, v) => {
                for label in tokens {
                    labels.add_edge_label(u, v, label);
                }
            }
            _ => warnings.push(format!("line {line}: edge ({raw_u}, {raw_v}) is not in the graph; skipped")),
        }
    }
    Ok(warnings)
}

fn original_index(graph: &Graph) -> HashMap<u64, VertexId> {
    graph.vertices().map(|v| (graph.original_id(v), v)).collect()
}
