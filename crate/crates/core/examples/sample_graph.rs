//! Draws configuration multigraphs and reports loops, multi-edges,
//! connectivity and short cycles.
//!
//! `cargo run --example sample_graph -- 10000 3`

use covertime_lab::multigraph::{diagnostics, write_edge_list};
use covertime_lab::seeding::trial_rng;
use covertime_lab::{sample_graph, DisconnectedMode};

fn main() -> covertime_lab::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(10_000);
    let d = args.next().unwrap_or(3);

    let mut simple = 0;
    let trials = 20;
    for i in 0..trials {
        let s = sample_graph(n, d, DisconnectedMode::Flag, &mut trial_rng(1, i))?;
        let diag = diagnostics(&s.graph, 4)?;
        let loops = (0..s.graph.num_edges()).filter(|&e| s.graph.is_loop(e)).count();
        println!(
            "graph {i:2}: loops {loops:2}  simple {:5}  connected {:5}  cycles of length <= 4: {}",
            diag.simple, diag.connected, diag.short_cycle_count
        );
        simple += diag.simple as usize;
    }
    println!("simple fraction {:.2} (limit exp(-(d^2-1)/4) = {:.3})", simple as f64 / trials as f64, (-((d * d - 1) as f64) / 4.0).exp());

    let tiny = sample_graph(6, 3, DisconnectedMode::Resample, &mut trial_rng(2, 0))?;
    println!("\nedge list of a connected cubic sample on 6 vertices:");
    write_edge_list(&tiny.graph, std::io::stdout().lock())
}
