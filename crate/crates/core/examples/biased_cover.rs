//! Vertex and edge cover times of the biased walk on random cubic graphs,
//! normalised by `n ln n`.

use covertime_lab::seeding::stream_rng;
use covertime_lab::stats::Summary;
use covertime_lab::walkers::{run_biased_walk, Start, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode, StopRule};

fn main() -> covertime_lab::Result<()> {
    for n in [1_000usize, 10_000, 100_000] {
        let (mut cv, mut ce) = (Summary::new(), Summary::new());
        for i in 0..10 {
            let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut stream_rng(3, i, 0))?.graph;
            let tr = run_biased_walk(&g, Start::Uniform, &mut stream_rng(3, i, 1), StopRule::AllEdges, WalkOptions::decimated(n))?;
            let nlogn = n as f64 * (n as f64).ln();
            cv.push(tr.full_vertex_cover().unwrap() as f64 / nlogn);
            ce.push(tr.full_edge_cover().unwrap() as f64 / (1.5 * nlogn));
        }
        let (cv, ce) = (cv.stats(), ce.stats());
        println!("n = {n:>6}: C_V/(n ln n) = {:.3} ± {:.3}   C_E/(m ln n) = {:.3} ± {:.3}", cv.mean, cv.sd, ce.mean, ce.sd);
    }
    Ok(())
}
