//! Biased walk against the simple and non-backtracking walks on the same
//! graphs.

use covertime_lab::seeding::stream_rng;
use covertime_lab::stats::Summary;
use covertime_lab::walkers::{run_walk, Start, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode, StopRule, WalkKind};

fn main() -> covertime_lab::Result<()> {
    let n = 10_000;
    let nlogn = n as f64 * (n as f64).ln();
    let kinds = [WalkKind::BiasedEdgeProcess, WalkKind::SimpleWalk, WalkKind::NonBacktrackingWalk];
    let mut cv = vec![Summary::new(); kinds.len()];
    for i in 0..10 {
        let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut stream_rng(4, i, 0))?.graph;
        for (k, &kind) in kinds.iter().enumerate() {
            let tr = run_walk(&g, kind, Start::Uniform, &mut stream_rng(4, i, 1 + k as u64), StopRule::AllVertices, WalkOptions::decimated(n))?;
            cv[k].push(tr.full_vertex_cover().unwrap() as f64 / nlogn);
        }
    }
    for (kind, s) in kinds.iter().zip(&cv) {
        let s = s.stats();
        println!("{:<8} C_V/(n ln n) = {:.3} ± {:.3}", kind.name(), s.mean, s.sd);
    }
    Ok(())
}
