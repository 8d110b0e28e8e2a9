//! Expected time for a simple walk from stationarity to hit a vertex set,
//! by linear solve, return-probability series and simulation.

use covertime_lab::seeding::trial_rng;
use covertime_lab::spectral::{hitting_time_exact, hitting_time_mc, hitting_time_zseries, McOptions};
use covertime_lab::{sample_graph, DisconnectedMode};
use rand::seq::index::sample;

fn main() -> covertime_lab::Result<()> {
    let mut rng = trial_rng(8, 0);
    let n = 1000;
    let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut rng)?.graph;
    for k in [1, 5, 20] {
        let set = sample(&mut rng, n, k).into_vec();
        let exact = hitting_time_exact(&g, &set)?;
        let series = hitting_time_zseries(&g, &set, 1e-8)?;
        let mc = hitting_time_mc(&g, &set, McOptions::new(20_000, 8))?;
        println!(
            "|S| = {k:2}: exact {:9.2}  series {:9.2} ({} terms)  simulated {:9.2} ± {:.2}  n/|S| = {:.0}",
            exact.value,
            series.value,
            series.truncation.unwrap_or(0),
            mc.value,
            mc.error,
            n as f64 / k as f64
        );
    }
    Ok(())
}
