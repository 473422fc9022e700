//! Error measures over Monte Carlo runs and their closed-form references.

use std::collections::BTreeMap;

use crate::stats::CompensatedSum;

/// Summary of one estimated quantity across runs.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ErrorSummary {
    pub truth: f64,
    pub mean_estimate: f64,
    pub variance: f64,
    /// `1 - E[estimate] / truth`
    pub bias: f64,
    /// `sqrt(E[(estimate - truth)^2]) / truth`
    pub nmse: f64,
    pub runs: usize,
}

/// Root-mean-square error over `estimates` relative to `truth`. `None` when
/// the truth is zero (the ratio is undefined) or there are no runs.
pub fn nmse(estimates: &[f64], truth: f64) -> Option<f64> {
    summarize(estimates, truth).map(|s| s.nmse)
}

/// As [`nmse`] for the CCDF, per degree. Degrees with zero truth are skipped;
/// a run without an entry for degree `i` is read as `gamma_i = 0`.
pub fn cnmse(runs: &[BTreeMap<usize, f64>], truth: &BTreeMap<usize, f64>) -> BTreeMap<usize, f64> {
    truth
        .iter()
        .filter_map(|(&i, &t)| {
            let xs: Vec<f64> = runs.iter().map(|r| r.get(&i).copied().unwrap_or(0.0)).collect();
            Some((i, nmse(&xs, t)?))
        })
        .collect()
}

pub fn summarize(estimates: &[f64], truth: f64) -> Option<ErrorSummary> {
    if truth == 0.0 || estimates.is_empty() {
        return None;
    }
    let n = estimates.len() as f64;
    let mean = estimates.iter().copied().collect::<CompensatedSum>().value() / n;
    let sq_err = estimates.iter().map(|x| (x - truth).powi(2)).collect::<CompensatedSum>().value() / n;
    let variance = if estimates.len() > 1 {
        estimates.iter().map(|x| (x - mean).powi(2)).collect::<CompensatedSum>().value() / (n - 1.0)
    } else {
        0.0
    };
    Some(ErrorSummary {
        truth,
        mean_estimate: mean,
        variance,
        bias: 1.0 - mean / truth,
        nmse: sq_err.sqrt() / truth,
        runs: estimates.len(),
    })
}

/// NMSE of the fraction of `B` uniformly sampled edges whose source has
/// degree `i`: `sqrt((1/pi_i - 1)/B)` with `pi_i = i theta_i / d`.
pub fn theoretical_nmse_edge(theta: f64, degree: f64, average_degree: f64, budget: f64) -> Option<f64> {
    let pi = degree * theta / average_degree;
    (pi > 0.0 && budget >= 1.0).then(|| ((1.0 / pi - 1.0) / budget).sqrt())
}

/// NMSE of the plain fraction over `B` uniform vertices: `sqrt((1/theta - 1)/B)`.
pub fn theoretical_nmse_vertex(theta: f64, budget: f64) -> Option<f64> {
    (theta > 0.0 && budget >= 1.0).then(|| ((1.0 / theta - 1.0) / budget).sqrt())
}
