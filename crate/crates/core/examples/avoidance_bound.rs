//! Probability that a short simple walk avoids a vertex set, next to the
//! spectral bound on walks that stay outside it.

use covertime_lab::seeding::trial_rng;
use covertime_lab::spectral::aks_avoidance;
use covertime_lab::{sample_graph, DisconnectedMode};
use rand::seq::index::sample;

fn main() -> covertime_lab::Result<()> {
    let mut rng = trial_rng(9, 0);
    let n = 10_000;
    let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut rng)?.graph;
    for size in [500, 2000] {
        let z = sample(&mut rng, n, size).into_vec();
        for ell in [5, 10, 20] {
            let r = aks_avoidance(&g, &z, ell, 50_000, 9)?;
            println!("|Z| = {size:4}, ell = {ell:2}: avoid {:.4} <= bound {:.4}  (lambda {:.4})", r.empirical, r.bound, r.lambda);
        }
    }
    Ok(())
}
