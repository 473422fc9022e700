//! Explicit Markov chain of the Frontier sampler on the Cartesian power
//! `G^m`. State `(v_1, ..., v_m)` moves to the state with one coordinate
//! `v_i` replaced by a neighbor, each of the `sum deg(v_i)` choices having
//! probability `1 / sum deg(v_i)`.

use super::{require_ergodic, OracleError};
use crate::graph::{Graph, VertexId};
use crate::stats::CompensatedSum;

pub const DEFAULT_STATE_CAP: usize = 1_000_000;
const RESIDUAL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 5_000_000;

#[derive(Debug, Clone)]
pub struct PowerChain {
    pub m: usize,
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    probs: Vec<f64>,
    pub stationary: Vec<f64>,
    pub iterations: usize,
}

impl PowerChain {
    pub fn n_states(&self) -> usize {
        self.offsets.len() - 1
    }

    /// State index of a walker tuple: `sum v_i * n^i`.
    pub fn encode(&self, walkers: &[VertexId]) -> usize {
        encode(self.n, walkers)
    }

    pub fn decode(&self, state: usize) -> Vec<VertexId> {
        let mut s = state;
        (0..self.m)
            .map(|_| {
                let v = s % self.n;
                s /= self.n;
                v as VertexId
            })
            .collect()
    }

    /// Successor states of `state` and their probabilities.
    pub fn row(&self, state: usize) -> (&[usize], &[f64]) {
        let r = self.offsets[state]..self.offsets[state + 1];
        (&self.targets[r.clone()], &self.probs[r])
    }

    /// Number of edges of `G^m`.
    pub fn n_transitions(&self) -> usize {
        self.targets.len()
    }

    /// Distribution of the number of walkers inside `subset` under the
    /// stationary vector.
    pub fn subset_count_marginal(&self, subset: &[VertexId]) -> Vec<f64> {
        let mut inside = vec![false; self.n];
        for &v in subset {
            inside[v as usize] = true;
        }
        let mut acc = vec![CompensatedSum::new(); self.m + 1];
        for (s, &p) in self.stationary.iter().enumerate() {
            let k = self.decode(s).iter().filter(|&&v| inside[v as usize]).count();
            acc[k].add(p);
        }
        acc.iter().map(CompensatedSum::value).collect()
    }
}

fn encode(n: usize, walkers: &[VertexId]) -> usize {
    walkers.iter().rev().fold(0, |acc, &v| acc * n + v as usize)
}

/// Closed-form stationary probability of FS state `walkers`:
/// `sum deg(v_i) / (m |V|^(m-1) vol(V))`.
pub fn frontier_stationary_probability(graph: &Graph, walkers: &[VertexId]) -> f64 {
    let m = walkers.len() as i32;
    let frontier: usize = walkers.iter().map(|&v| graph.degree(v)).sum();
    frontier as f64 / (m as f64 * (graph.n_vertices() as f64).powi(m - 1) * graph.volume() as f64)
}

/// Builds the transition structure of `G^m` and its stationary vector by
/// power iteration on the lazy chain `(I + P) / 2` (same fixed point,
/// guaranteed convergence) until the L1 change per sweep is below 1e-12.
pub fn enumerate_power_chain(graph: &Graph, m: usize, state_cap: usize) -> Result<PowerChain, OracleError> {
    assert!(m >= 1, "dimension must be at least 1");
    let n = graph.n_vertices();
    let states = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if states > state_cap as u128 {
        return Err(OracleError::StateCapExceeded { states, cap: state_cap });
    }
    require_ergodic(graph)?;
    let n_states = states as usize;

    let mut offsets = Vec::with_capacity(n_states + 1);
    let mut targets = Vec::new();
    let mut probs = Vec::new();
    offsets.push(0);
    let mut walkers = vec![0 as VertexId; m];
    let mut place = vec![1usize; m];
    for i in 1..m {
        place[i] = place[i - 1] * n;
    }
    for s in 0..n_states {
        let mut rest = s;
        for w in walkers.iter_mut() {
            *w = (rest % n) as VertexId;
            rest /= n;
        }
        let frontier: usize = walkers.iter().map(|&v| graph.degree(v)).sum();
        let p = 1.0 / frontier as f64;
        for (i, &v) in walkers.iter().enumerate() {
            let without = s - v as usize * place[i];
            for &w in graph.neighbors(v) {
                targets.push(without + w as usize * place[i]);
                probs.push(p);
            }
        }
        offsets.push(targets.len());
    }

    let mut x = vec![1.0 / n_states as f64; n_states];
    let mut next = vec![0.0; n_states];
    let mut iterations = 0;
    loop {
        next.iter_mut().zip(&x).for_each(|(y, &xi)| *y = 0.5 * xi);
        for s in 0..n_states {
            let half = 0.5 * x[s];
            for k in offsets[s]..offsets[s + 1] {
                next[targets[k]] += half * probs[k];
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|y| *y /= total);
        let residual: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        iterations += 1;
        if residual < RESIDUAL {
            break;
        }
        if iterations >= MAX_ITERATIONS {
            return Err(OracleError::NoConvergence { tolerance: RESIDUAL, iterations });
        }
    }
    Ok(PowerChain { m, n, offsets, targets, probs, stationary: x, iterations })
}
