use rand::Rng;
use rayon::prelude::*;

use super::{second_eigenvalue, EigenOptions};
use crate::error::{invalid, Result};
use crate::multigraph::{membership, Multigraph};
use crate::seeding::trial_rng;

#[derive(Debug, Clone, PartialEq)]
pub struct AksReport {
    /// Fraction of walks from a uniform vertex outside `Z` that never enter `Z`.
    pub empirical: f64,
    /// `((1 - c) r + c lambda_adj)^ell / r^ell` with `c = |Z| / n`.
    pub bound: f64,
    pub c: f64,
    /// Second absolute transition eigenvalue (upper estimate).
    pub lambda: f64,
    /// The same on the adjacency scale, `r * lambda`.
    pub lambda_adj: f64,
    pub trials: usize,
}

/// Probability that an `ell`-step simple walk avoids `Z`, next to the
/// spectral walk-count bound for `r`-regular graphs.
pub fn aks_avoidance(g: &Multigraph, z: &[usize], ell: usize, trials: usize, seed: u64) -> Result<AksReport> {
    let Some(r) = g.regular_degree() else {
        return invalid("avoidance bound needs a regular graph");
    };
    let in_z = membership(g.n(), z);
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !in_z[v]).collect();
    if outside.is_empty() {
        return invalid("Z must be a proper subset");
    }
    if trials == 0 {
        return invalid("trials must be at least 1");
    }
    let c = (g.n() - outside.len()) as f64 / g.n() as f64;
    let lambda = second_eigenvalue(g, EigenOptions::default())?.lambda_upper();
    let lambda_adj = r as f64 * lambda;
    let rf = r as f64;
    let bound = (((1.0 - c) * rf + c * lambda_adj) / rf).powi(ell as i32);
    let avoided: usize = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let mut v = outside[rng.random_range(0..outside.len())];
            for _ in 0..ell {
                v = g.head(g.half_edges(v).start + rng.random_range(0..r));
                if in_z[v] {
                    return 0;
                }
            }
            1
        })
        .sum();
    Ok(AksReport {
        empirical: avoided as f64 / trials as f64,
        bound,
        c,
        lambda,
        lambda_adj,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{families, sample_graph, DisconnectedMode};
    use crate::seeding::rng_from_seed;

    #[test]
    fn empty_set_is_always_avoided() {
        let r = aks_avoidance(&families::petersen(), &[], 7, 1000, 1).unwrap();
        assert_eq!((r.empirical, r.bound), (1.0, 1.0));
    }

    #[test]
    fn all_neighbors_in_z() {
        let r = aks_avoidance(&families::complete(4), &[1, 2, 3], 1, 1000, 1).unwrap();
        assert_eq!(r.empirical, 0.0);
    }

    #[test]
    fn bound_holds_on_a_small_random_graph() {
        let mut rng = rng_from_seed(30);
        let g = sample_graph(1000, 3, DisconnectedMode::Resample, &mut rng).unwrap().graph;
        let z: Vec<usize> = rand::seq::index::sample(&mut rng, 1000, 100).into_vec();
        for ell in [5, 10, 20] {
            let r = aks_avoidance(&g, &z, ell, 20_000, ell as u64).unwrap();
            assert!(r.empirical <= r.bound, "{r:?}");
        }
    }

    #[test]
    fn rejects_full_z() {
        assert!(aks_avoidance(&families::complete(4), &[0, 1, 2, 3], 1, 10, 1).is_err());
    }
}
