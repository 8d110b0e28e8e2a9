//! Runs the biased walk while revealing the pairing only where the walk goes,
//! then checks the revealed part is consistent.

use covertime_lab::seeding::rng_from_seed;
use covertime_lab::walkers::{check_invariants, run_lazy_biased_walk, WalkOptions};
use covertime_lab::StopRule;

fn main() -> covertime_lab::Result<()> {
    let n = 100_000;
    let t = n; // two thirds of the edges
    let run = run_lazy_biased_walk(n, 3, &mut rng_from_seed(5), StopRule::Edges(t), WalkOptions::decimated(1000))?;
    let tr = &run.trajectory;
    println!("discovered {} edges in {} steps", tr.edges_discovered(), tr.steps);
    println!("vertices visited {}", tr.vertices_visited());
    println!("exposure is an involution: {}", run.exposure_is_involution());
    println!("full pairing available: {}", run.pairing().is_some());
    let p = tr.at(t).unwrap();
    println!("X = {:?}, Phi = {}, delta = {:.3}", p.x, p.phi, p.delta);
    check_invariants(tr).map_err(covertime_lab::Error::InvalidParameters)?;
    println!("invariants hold");
    Ok(())
}
