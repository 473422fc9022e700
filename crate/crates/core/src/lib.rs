//! Graph sampling with Frontier Sampling and classical random walks, unbiased
//! estimators of graph characteristics, exact oracles, and a Monte Carlo
//! harness measuring estimation error.

pub mod cli;
pub mod estimators;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod rng;
pub mod samplers;
pub mod stats;
