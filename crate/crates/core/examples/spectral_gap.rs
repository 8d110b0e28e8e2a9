//! Second eigenvalue of the transition matrix on sampled graphs, and what
//! contracting a vertex set does to it.

use covertime_lab::seeding::trial_rng;
use covertime_lab::spectral::{contract, second_eigenvalue, second_eigenvalue_dense, EigenOptions};
use covertime_lab::{sample_graph, DisconnectedMode};
use rand::seq::index::sample;

fn main() -> covertime_lab::Result<()> {
    for d in [3, 4, 5] {
        let g = sample_graph(2000, d, DisconnectedMode::Resample, &mut trial_rng(7, d as u64))?.graph;
        let r = second_eigenvalue(&g, EigenOptions::default())?;
        let ramanujan = 2.0 * ((d - 1) as f64).sqrt() / d as f64;
        println!(
            "d = {d}: lambda = {:.4} (upper {:.4}, {} in {} iterations), 2 sqrt(d-1)/d = {ramanujan:.4}",
            r.lambda,
            r.lambda_upper(),
            r.method.name(),
            r.iterations
        );
    }

    let mut rng = trial_rng(7, 100);
    let g = sample_graph(400, 3, DisconnectedMode::Resample, &mut rng)?.graph;
    let before = second_eigenvalue_dense(&g)?.lambda;
    for k in [1, 10, 50] {
        let set = sample(&mut rng, g.n(), k).into_vec();
        let c = contract(&g, &set)?;
        let after = second_eigenvalue_dense(&c.graph)?.lambda;
        println!("contract {k:2} vertices: lambda {before:.4} -> {after:.4}");
    }
    Ok(())
}
