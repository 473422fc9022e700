//! Monte Carlo experiments: error metrics, config-driven runs against exact
//! truth, and convergence and occupancy diagnostics.

mod diagnostics;
mod experiment;
mod metrics;

pub use diagnostics::{convergence_diagnostic, kfs_occupancy_study, ConvergenceDiagnostic, OccupancyMethod, OccupancyStudy};
pub use experiment::{
    cached_truth, run_monte_carlo, run_on_graph, Budget, ErrorReport, ExperimentConfig, ExperimentOutput, GraphSpec, LoadedGraph, ReportRow,
};
pub use metrics::{cnmse, nmse, summarize, theoretical_nmse_edge, theoretical_nmse_vertex, ErrorSummary};

use thiserror::Error;

use crate::graph::GraphError;
use crate::oracles::OracleError;
use crate::samplers::SamplerError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
