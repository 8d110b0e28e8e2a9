//! Tracks how many vertices have 0..3 unexplored incidences as the biased
//! walk discovers edges, next to the closed-form mean-field curves.

use covertime_lab::oracle::{closed_x1, closed_x3};
use covertime_lab::seeding::stream_rng;
use covertime_lab::walkers::{run_biased_walk, Start, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode, StopRule};

fn main() -> covertime_lab::Result<()> {
    let n = 100_000;
    let m = 3 * n / 2;
    let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut stream_rng(6, 0, 0))?.graph;
    let tr = run_biased_walk(&g, Start::Uniform, &mut stream_rng(6, 0, 1), StopRule::AllEdges, WalkOptions::default())?;

    println!("{:>6} {:>8} {:>8} {:>10} {:>8} {:>10} {:>7}", "delta", "t", "X3", "n d^1.5", "X1", "closed X1", "Phi");
    for delta in [0.9, 0.5, 0.25, 0.1, 0.05, 0.01] {
        let t = ((1.0 - delta) * m as f64).round() as usize;
        let p = tr.at(t).unwrap();
        println!(
            "{delta:>6} {t:>8} {:>8} {:>10.0} {:>8} {:>10.0} {:>7}",
            p.x[3], closed_x3(n, t), p.x[1], closed_x1(n, t), p.phi
        );
    }
    println!("untouched vertices gone after {} of {m} discoveries", tr.samples().find(|p| p.x[3] == 0).unwrap().t);
    Ok(())
}
