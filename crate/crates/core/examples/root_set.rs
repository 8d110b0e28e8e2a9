//! Tests whether the vertices the biased walk has not finished form a root
//! set: large, nearly a matching, with few short paths between members.

use covertime_lab::seeding::stream_rng;
use covertime_lab::structure::is_root_set;
use covertime_lab::walkers::{run_biased_walk, Start, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode, StopRule};

fn main() -> covertime_lab::Result<()> {
    let n = 100_000;
    let delta: f64 = 0.01;
    let ell = (-delta.ln()).ln();
    let t = ((1.0 - delta) * 1.5 * n as f64).round() as usize;
    for i in 0..5 {
        let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut stream_rng(11, i, 0))?.graph;
        let tr = run_biased_walk(&g, Start::Uniform, &mut stream_rng(11, i, 1), StopRule::Edges(t), WalkOptions::decimated(n))?;
        let set = tr.unfinished_vertices();
        let r = is_root_set(&g, &set, ell);
        println!(
            "trial {i}: |S| = {:5} (>= {:.1}: {}), internal edges {:5} ({}), short paths {:3} ({}) => {}",
            r.size,
            ell.powi(5),
            r.size_ok,
            r.internal_edges,
            r.internal_ok,
            r.short_path_count,
            r.paths_ok,
            r.verdict
        );
    }
    Ok(())
}
