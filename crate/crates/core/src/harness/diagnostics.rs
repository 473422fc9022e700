use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::graph::{Graph, VertexId};
use crate::oracles::{exact_kfs_distribution, multiplerw_walker_ratio, require_ergodic, SubsetStats};
use crate::rng::RngStream;
use crate::samplers::{place_walkers, step_from, CostModel, FrontierState, Method, Sample, SampleTrace, SamplerConfig, StartMode};
use crate::stats::{binomial_pmf, total_variation, CompensatedSum};

/// Distance of the final sampled edge's law from uniform over `E`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceDiagnostic {
    /// `max_e |1 - p_e |E||` with `p_e` the estimated final-edge probability.
    pub max_deviation: f64,
    /// 95% half-width of the deviation at the maximising edge.
    pub ci_half_width: f64,
    pub argmax_edge: (VertexId, VertexId),
    /// Runs averaged.
    pub samples: u64,
}

const BLOCKS: usize = 256;

/// Per-run law of the final edge given the walkers' positions before the
/// last move, as `(u, p)`: each edge out of `u` has probability `p`.
/// Frontier samplers condition on the whole walker set `L` (edge `(u, v)`
/// has probability `mult(u) / |e(L)|`); independent walkers and edge samples
/// condition on the vertex the last move left, pooled over walkers.
fn final_edge_law(graph: &Graph, trace: &SampleTrace) -> Vec<(VertexId, f64)> {
    let mut law: Vec<(VertexId, f64)> = match trace.method {
        Method::Frontier | Method::DistributedFrontier => {
            let mut at = trace.start_vertices.clone();
            for s in &trace.steps[..trace.steps.len() - 1] {
                at[s.walker as usize] = s.v;
            }
            let total: usize = at.iter().map(|&v| graph.degree(v)).sum();
            at.into_iter().map(|v| (v, 1.0 / total as f64)).collect()
        }
        _ => {
            let mut last = vec![None; trace.m.max(1)];
            if trace.method == Method::MultipleRw {
                trace.steps.iter().for_each(|s| last[s.walker as usize] = Some(s.u));
            } else {
                last[0] = trace.steps.last().map(|s| s.u);
            }
            let sources: Vec<VertexId> = last.into_iter().flatten().collect();
            let k = sources.len() as f64;
            sources.into_iter().map(|u| (u, 1.0 / (k * graph.degree(u) as f64))).collect()
        }
    };
    law.sort_unstable_by_key(|x| x.0);
    law.dedup_by(|b, a| {
        let same = a.0 == b.0;
        if same {
            a.1 += b.1;
        }
        same
    });
    law
}

/// Monte Carlo estimate of how far the last edge sampled under budget `B`
/// is from the stationary (uniform) edge law. Each run contributes the
/// conditional law of its final edge given the state before the last move,
/// which has the same mean as the final-edge indicator and far less noise.
pub fn convergence_diagnostic(
    graph: &Graph,
    sampler: &SamplerConfig,
    budget: f64,
    runs: usize,
    seed: u64,
    workers: usize,
) -> Result<ConvergenceDiagnostic, HarnessError> {
    require_ergodic(graph)?;
    sampler.check_budget(graph, budget)?;
    if sampler.method == Method::RandomVertex {
        return Err(HarnessError::Config("vertex sampling has no final edge".into()));
    }
    if runs == 0 {
        return Err(HarnessError::Config("runs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| HarnessError::Config(e.to_string()))?;
    let n = graph.n_vertices();
    // Fixed blocks summed in order keep the result independent of `workers`.
    let block = runs.div_ceil(BLOCKS);
    let partial: Vec<(Vec<f64>, Vec<f64>)> = pool.install(|| {
        (0..runs.div_ceil(block))
            .into_par_iter()
            .map(|b| -> Result<_, HarnessError> {
                let (mut sum, mut sq) = (vec![0.0; n], vec![0.0; n]);
                for r in b * block..((b + 1) * block).min(runs) {
                    let Sample::Edges(t) = sampler.run(graph, budget, &RngStream::with_index(seed, r as u64))? else {
                        unreachable!("edge sampler")
                    };
                    for (u, p) in final_edge_law(graph, &t) {
                        sum[u as usize] += p;
                        sq[u as usize] += p * p;
                    }
                }
                Ok((sum, sq))
            })
            .collect::<Result<_, _>>()
    })?;
    let (mut sum, mut sq) = (vec![0.0; n], vec![0.0; n]);
    for (s, q) in partial {
        sum.iter_mut().zip(s).for_each(|(x, y)| *x += y);
        sq.iter_mut().zip(q).for_each(|(x, y)| *x += y);
    }
    let r = runs as f64;
    let e = graph.n_edges() as f64;
    let (u, mean) = sum
        .iter()
        .enumerate()
        .map(|(u, &s)| (u, s / r))
        .max_by(|a, b| (1.0 - a.1 * e).abs().total_cmp(&(1.0 - b.1 * e).abs()).then(b.0.cmp(&a.0)))
        .expect("graph has vertices");
    let variance = if runs > 1 { ((sq[u] - r * mean * mean) / (r - 1.0)).max(0.0) } else { 0.0 };
    let u = u as VertexId;
    Ok(ConvergenceDiagnostic {
        max_deviation: (1.0 - mean * e).abs(),
        ci_half_width: 1.96 * (variance / r).sqrt() * e,
        argmax_edge: (u, graph.neighbors(u)[0]),
        samples: runs as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OccupancyMethod {
    Frontier,
    MultipleRw,
}

/// Long-run distribution of the number of walkers inside a subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccupancyStudy {
    pub m: usize,
    /// Time-averaged `P[K = k]`, pooled over runs.
    pub empirical: Vec<f64>,
    /// Distribution of `K` at the start positions, over runs.
    pub initial: Vec<f64>,
    /// Stationary law: the closed form for the frontier sampler,
    /// `Binomial(m, vol(A)/vol(V))` for independent walkers.
    pub stationary: Vec<f64>,
    /// `Binomial(m, |A|/|V|)`, the law of uniformly placed walkers.
    pub uniform: Vec<f64>,
    pub tv_stationary: f64,
    pub tv_uniform: f64,
    pub mean: f64,
    /// Standard error of `mean` from the spread of per-run averages.
    pub mean_std_error: f64,
    /// `m vol(A) / vol(V)`
    pub stationary_mean_mw: f64,
    /// `mean / (m |A| / |V|)`
    pub alpha_empirical: f64,
    /// `d_A / d`
    pub alpha_theory: f64,
}

/// Runs `runs` independent chains for `steps` moves each (for independent
/// walkers a move advances every walker once) and tallies walkers in
/// `subset` after every move.
#[allow(clippy::too_many_arguments)]
pub fn kfs_occupancy_study(
    graph: &Graph,
    subset: &[VertexId],
    m: usize,
    method: OccupancyMethod,
    start: &StartMode,
    steps: usize,
    runs: usize,
    seed: u64,
) -> Result<OccupancyStudy, HarnessError> {
    require_ergodic(graph)?;
    let stats = SubsetStats::new(graph, subset)?;
    if m == 0 || steps == 0 || runs == 0 {
        return Err(HarnessError::Config("m, steps and runs must be positive".into()));
    }
    let mut inside = vec![false; graph.n_vertices()];
    subset.iter().for_each(|&v| inside[v as usize] = true);
    let count = |l: &[VertexId]| l.iter().filter(|&&v| inside[v as usize]).count();

    let per_run: Vec<(Vec<u64>, usize, f64)> = (0..runs)
        .into_par_iter()
        .map(|r| -> Result<_, HarnessError> {
            let stream = RngStream::with_index(seed, r as u64);
            let mut rng = stream.rng();
            let (starts, _) = place_walkers(graph, m, start, &CostModel::default(), &mut rng)?;
            let initial = count(&starts);
            let mut hist = vec![0u64; m + 1];
            match method {
                OccupancyMethod::Frontier => {
                    let mut state = FrontierState::new(graph, starts);
                    let mut k = initial as i64;
                    for _ in 0..steps {
                        let (_, u, v) = state.step(graph, &mut rng);
                        k += inside[v as usize] as i64 - inside[u as usize] as i64;
                        hist[k as usize] += 1;
                    }
                }
                OccupancyMethod::MultipleRw => {
                    let mut at = starts;
                    for _ in 0..steps {
                        at.iter_mut().for_each(|v| *v = step_from(graph, *v, &mut rng));
                        hist[count(&at)] += 1;
                    }
                }
            }
            let mean = hist.iter().enumerate().map(|(k, &c)| k as f64 * c as f64).sum::<f64>() / steps as f64;
            Ok((hist, initial, mean))
        })
        .collect::<Result<_, _>>()?;

    let total = (steps * runs) as f64;
    let mut empirical = vec![0.0; m + 1];
    let mut initial = vec![0.0; m + 1];
    for (hist, k0, _) in &per_run {
        hist.iter().enumerate().for_each(|(k, &c)| empirical[k] += c as f64 / total);
        initial[*k0] += 1.0 / runs as f64;
    }
    let means: Vec<f64> = per_run.iter().map(|x| x.2).collect();
    let mean = means.iter().copied().collect::<CompensatedSum>().value() / runs as f64;
    let spread = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (runs.max(2) - 1) as f64;

    let vol_share = graph.volume_of(subset) as f64 / graph.volume() as f64;
    let stationary = match method {
        OccupancyMethod::Frontier => exact_kfs_distribution(graph, subset, m)?,
        OccupancyMethod::MultipleRw => binomial_pmf(m, vol_share),
    };
    let uniform = binomial_pmf(m, stats.p);
    Ok(OccupancyStudy {
        m,
        tv_stationary: total_variation(&empirical, &stationary),
        tv_uniform: total_variation(&empirical, &uniform),
        empirical,
        initial,
        stationary,
        uniform,
        mean,
        mean_std_error: (spread / runs as f64).sqrt(),
        stationary_mean_mw: m as f64 * vol_share,
        alpha_empirical: mean / (m as f64 * stats.p),
        alpha_theory: multiplerw_walker_ratio(graph, subset)?,
    })
}
