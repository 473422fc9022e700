//! CSV traces. Metadata goes in leading `# key=value` lines; vertex ids are
//! written as the ids of the input edge list.

use std::io::{BufRead, Write};

use serde::Deserialize;
use thiserror::Error;

use super::{Method, Sample, SampleTrace, SampledEdge, VertexTrace};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Error)]
pub enum TraceIoError {
    #[error("trace was recorded on graph {expected}, input graph hashes to {found}")]
    HashMismatch { expected: String, found: String },
    #[error("malformed trace: {0}")]
    Malformed(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceMeta {
    pub graph_hash: String,
    pub method: Method,
    pub m: usize,
    pub budget: f64,
    pub spent: f64,
    pub seed: Option<u64>,
}

impl TraceMeta {
    pub fn for_sample(graph: &Graph, sample: &Sample, seed: Option<u64>) -> Self {
        let (method, m, budget, spent) = match sample {
            Sample::Edges(t) => (t.method, t.m, t.budget, t.spent),
            Sample::Vertices(t) => (Method::RandomVertex, 1, t.budget, t.spent),
        };
        Self { graph_hash: graph.content_hash(), method, m, budget, spent, seed }
    }
}

fn write_meta<W: Write>(out: &mut W, meta: &TraceMeta, starts: &[u64]) -> std::io::Result<()> {
    writeln!(out, "# graph_hash={}", meta.graph_hash)?;
    writeln!(out, "# method={}", meta.method)?;
    writeln!(out, "# m={}", meta.m)?;
    writeln!(out, "# budget={}", meta.budget)?;
    writeln!(out, "# spent={}", meta.spent)?;
    if let Some(seed) = meta.seed {
        writeln!(out, "# seed={seed}")?;
    }
    let starts: Vec<String> = starts.iter().map(u64::to_string).collect();
    writeln!(out, "# start_vertices={}", starts.join(" "))
}

/// Writes `step,walker,u,v,cost` rows, plus `time` for timed traces.
pub fn write_trace_csv<W: Write>(mut out: W, graph: &Graph, trace: &SampleTrace, meta: &TraceMeta) -> Result<(), TraceIoError> {
    let starts: Vec<u64> = trace.start_vertices.iter().map(|&v| graph.original_id(v)).collect();
    write_meta(&mut out, meta, &starts)?;
    let timed = trace.steps.iter().any(|s| s.time.is_some());
    let mut w = csv::Writer::from_writer(out);
    if timed {
        w.write_record(["step", "walker", "u", "v", "cost", "time"])?;
    } else {
        w.write_record(["step", "walker", "u", "v", "cost"])?;
    }
    for (i, s) in trace.steps.iter().enumerate() {
        let mut row = vec![
            i.to_string(),
            s.walker.to_string(),
            graph.original_id(s.u).to_string(),
            graph.original_id(s.v).to_string(),
            s.cost.to_string(),
        ];
        if timed {
            row.push(s.time.map(|t| t.to_string()).unwrap_or_default());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `step,vertex,cost` rows.
pub fn write_vertex_trace_csv<W: Write>(mut out: W, graph: &Graph, trace: &VertexTrace, meta: &TraceMeta) -> Result<(), TraceIoError> {
    write_meta(&mut out, meta, &[])?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "vertex", "cost"])?;
    for (i, (&v, c)) in trace.vertices.iter().zip(&trace.costs).enumerate() {
        w.write_record([i.to_string(), graph.original_id(v).to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Deserialize)]
struct EdgeRow {
    walker: u32,
    u: u64,
    v: u64,
    cost: f64,
    #[serde(default)]
    time: Option<f64>,
}

#[derive(Deserialize)]
struct VertexRow {
    vertex: u64,
    cost: f64,
}

/// Reads a trace written by [`write_trace_csv`] or [`write_vertex_trace_csv`]
/// and checks it was recorded on `graph`.
pub fn read_trace_csv<R: BufRead>(mut input: R, graph: &Graph) -> Result<(Sample, TraceMeta), TraceIoError> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let mut fields = std::collections::HashMap::new();
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        if let Some((k, v)) = line.trim_start_matches('#').trim().split_once('=') {
            fields.insert(k.trim().to_owned(), v.trim().to_owned());
        }
    }
    let get = |k: &str| fields.get(k).ok_or_else(|| TraceIoError::Malformed(format!("missing `{k}` header")));
    let num = |k: &str| -> Result<f64, TraceIoError> { get(k)?.parse().map_err(|_| TraceIoError::Malformed(format!("bad `{k}` header"))) };
    let meta = TraceMeta {
        graph_hash: get("graph_hash")?.clone(),
        method: get("method")?.parse().map_err(TraceIoError::Malformed)?,
        m: get("m")?.parse().map_err(|_| TraceIoError::Malformed("bad `m` header".into()))?,
        budget: num("budget")?,
        spent: num("spent")?,
        seed: fields.get("seed").and_then(|s| s.parse().ok()),
    };
    let found = graph.content_hash();
    if meta.graph_hash != found {
        return Err(TraceIoError::HashMismatch { expected: meta.graph_hash, found });
    }
    let dense = |id: u64| -> Result<VertexId, TraceIoError> {
        graph.dense_id(id).ok_or_else(|| TraceIoError::Malformed(format!("vertex {id} is not in the graph")))
    };
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());

    if meta.method == Method::RandomVertex {
        let (mut vertices, mut costs) = (Vec::new(), Vec::new());
        for row in reader.deserialize::<VertexRow>() {
            let row = row?;
            vertices.push(dense(row.vertex)?);
            costs.push(row.cost);
        }
        let t = VertexTrace { vertices, costs, budget: meta.budget, spent: meta.spent };
        return Ok((Sample::Vertices(t), meta));
    }

    let start_vertices = get("start_vertices")?
        .split_whitespace()
        .map(|s| s.parse::<u64>().map_err(|_| TraceIoError::Malformed("bad start vertex".into())).and_then(dense))
        .collect::<Result<Vec<_>, _>>()?;
    let mut steps = Vec::new();
    for row in reader.deserialize::<EdgeRow>() {
        let row = row?;
        let (u, v) = (dense(row.u)?, dense(row.v)?);
        if !graph.has_edge(u, v) || row.walker as usize >= meta.m.max(1) {
            return Err(TraceIoError::Malformed(format!("step ({}, {}) is not an edge of walker range", row.u, row.v)));
        }
        steps.push(SampledEdge { walker: row.walker, u, v, cost: row.cost, time: row.time });
    }
    let t = SampleTrace { method: meta.method, m: meta.m, start_vertices, steps, budget: meta.budget, spent: meta.spent };
    Ok((Sample::Edges(t), meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::rng::RngStream;
    use crate::samplers::{SamplerConfig, StartMode};

    fn round_trip(cfg: SamplerConfig, budget: f64) {
        let g = Graph::from_pairs(&[(10, 20), (20, 30), (30, 10), (30, 40), (20, 10)]).unwrap();
        let g = crate::graph::Graph::from_undirected(&g.edges().collect::<Vec<_>>()).unwrap();
        let sample = cfg.run(&g, budget, &RngStream::new(3)).unwrap();
        let meta = TraceMeta::for_sample(&g, &sample, Some(3));
        let mut buf = Vec::new();
        match &sample {
            Sample::Edges(t) => write_trace_csv(&mut buf, &g, t, &meta).unwrap(),
            Sample::Vertices(t) => write_vertex_trace_csv(&mut buf, &g, t, &meta).unwrap(),
        }
        let (back, back_meta) = read_trace_csv(buf.as_slice(), &g).unwrap();
        assert_eq!(back, sample);
        assert_eq!(back_meta, meta);
    }

    #[test]
    fn round_trips() {
        for method in ["fs", "mrw", "rw", "re", "rv", "dfs"] {
            let cfg: SamplerConfig = serde_json::from_str(&format!(r#"{{"method":"{method}","m":2}}"#)).unwrap();
            let cfg = if method == "rw" || method == "rv" || method == "re" { SamplerConfig { m: 1, ..cfg } } else { cfg };
            round_trip(cfg, 20.0);
        }
        round_trip(
            SamplerConfig { start: StartMode::Explicit(vec![1, 1]), ..serde_json::from_str(r#"{"method":"fs","m":2}"#).unwrap() },
            9.0,
        );
    }

    #[test]
    fn header_shape() {
        let g = triangle_plus_pendant();
        let cfg: SamplerConfig = serde_json::from_str(r#"{"method":"dfs","m":2}"#).unwrap();
        let sample = cfg.run(&g, 5.0, &RngStream::new(1)).unwrap();
        let Sample::Edges(t) = &sample else { panic!() };
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &g, t, &TraceMeta::for_sample(&g, &sample, None)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().any(|l| l == "step,walker,u,v,cost,time"));
    }

    #[test]
    fn rejects_other_graph() {
        let g = triangle_plus_pendant();
        let cfg: SamplerConfig = serde_json::from_str(r#"{"method":"fs","m":2}"#).unwrap();
        let sample = cfg.run(&g, 20.0, &RngStream::new(1)).unwrap();
        let Sample::Edges(t) = &sample else { panic!() };
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &g, t, &TraceMeta::for_sample(&g, &sample, None)).unwrap();
        let other = complete(4);
        assert!(matches!(read_trace_csv(buf.as_slice(), &other), Err(TraceIoError::HashMismatch { .. })));
    }
}
