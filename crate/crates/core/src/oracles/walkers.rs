//! Closed forms for how many walkers sit inside a vertex subset.

use super::{validate_subset, OracleError};
use crate::graph::{Graph, VertexId};
use crate::stats::{binomial_pmf, stable_sum};

/// Sizes and average degrees of a subset `V_A`, its complement `V_B` and `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetStats {
    /// `|V_A| / |V|`
    pub p: f64,
    pub d_a: f64,
    pub d_b: f64,
    pub d: f64,
}

impl SubsetStats {
    pub fn new(graph: &Graph, subset: &[VertexId]) -> Result<Self, OracleError> {
        let subset = validate_subset(graph, subset)?;
        let n = graph.n_vertices() as f64;
        let (size_a, vol_a) = (subset.len() as f64, graph.volume_of(&subset) as f64);
        let vol = graph.volume() as f64;
        Ok(Self { p: size_a / n, d_a: vol_a / size_a, d_b: (vol - vol_a) / (n - size_a), d: vol / n })
    }
}

/// Stationary distribution of the number of FS walkers in `subset`:
/// `P[K = k] = C(m,k) p^k (1-p)^(m-k) (k d_A + (m-k) d_B) / (m d)`.
pub fn exact_kfs_distribution(graph: &Graph, subset: &[VertexId], m: usize) -> Result<Vec<f64>, OracleError> {
    let s = SubsetStats::new(graph, subset)?;
    let binomial = binomial_pmf(m, s.p);
    let m_f = m as f64;
    let pmf: Vec<f64> =
        binomial.iter().enumerate().map(|(k, &b)| b * (k as f64 * s.d_a + (m_f - k as f64) * s.d_b) / (m_f * s.d)).collect();
    debug_assert!((stable_sum(pmf.iter().copied()) - 1.0).abs() < 1e-9);
    Ok(pmf)
}

/// `alpha_A = d_A / d`: stationary MultipleRW occupancy of `subset` relative
/// to uniformly placed walkers.
pub fn multiplerw_walker_ratio(graph: &Graph, subset: &[VertexId]) -> Result<f64, OracleError> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.iter().any(|&v| v as usize >= graph.n_vertices()) {
        return Err(OracleError::InvalidSubset);
    }
    let d_a = graph.volume_of(&s) as f64 / s.len() as f64;
    Ok(d_a / graph.average_degree())
}

/// `E[K_mw] = m vol(V_A) / vol(V)` for `m` independent stationary walkers.
pub fn multiplerw_mean_occupancy(graph: &Graph, subset: &[VertexId], m: usize) -> f64 {
    m as f64 * graph.volume_of(subset) as f64 / graph.volume() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::stats::total_variation;

    #[test]
    fn pendant_subset_m2() {
        let g = triangle_plus_pendant();
        let k = exact_kfs_distribution(&g, &[3], 2).unwrap();
        let expect = [21.0 / 32.0, 10.0 / 32.0, 1.0 / 32.0];
        for (a, b) in k.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn normalised_for_many_inputs() {
        let g = triangle_plus_pendant();
        for subset in [vec![0], vec![3], vec![0, 2], vec![0, 1, 3]] {
            for m in [1, 2, 5, 17, 64] {
                let k = exact_kfs_distribution(&g, &subset, m).unwrap();
                assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equal_degrees_collapse_to_binomial() {
        let g = ring(9);
        let k = exact_kfs_distribution(&g, &[0, 4], 6).unwrap();
        assert!(total_variation(&k, &binomial_pmf(6, 2.0 / 9.0)) < 1e-14);
    }

    #[test]
    fn converges_to_binomial_with_m() {
        let g = triangle_plus_pendant();
        let tv = |m| total_variation(&exact_kfs_distribution(&g, &[3], m).unwrap(), &binomial_pmf(m, 0.25));
        assert!(tv(64) < tv(4));
        assert!(tv(64) < 0.05);
    }

    #[test]
    fn invalid_subsets() {
        let g = triangle_plus_pendant();
        assert_eq!(exact_kfs_distribution(&g, &[], 2), Err(OracleError::InvalidSubset));
        assert_eq!(exact_kfs_distribution(&g, &[0, 1, 2, 3], 2), Err(OracleError::InvalidSubset));
        assert_eq!(multiplerw_walker_ratio(&g, &[]), Err(OracleError::InvalidSubset));
    }

    #[test]
    fn walker_ratio_examples() {
        let g = triangle_plus_pendant();
        assert_eq!(multiplerw_walker_ratio(&g, &[0, 1, 2, 3]).unwrap(), 1.0);
        assert_eq!(multiplerw_walker_ratio(&g, &[3]).unwrap(), 0.5);
        assert_eq!(multiplerw_walker_ratio(&g, &[2]).unwrap(), 1.5);
        assert_eq!(multiplerw_mean_occupancy(&g, &[2], 8), 3.0);
    }
}
