//! Splits the once-traversed edges of a walk into bridges and compares the
//! first bridge length with the urn law.

use covertime_lab::seeding::stream_rng;
use covertime_lab::structure::{extract_green, first_bridge_pmf, polya_urn, urn_bridge_test, UrnTestConfig};
use covertime_lab::walkers::{run_biased_walk, Start, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode, StopRule};

fn main() -> covertime_lab::Result<()> {
    let n = 2000;
    let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut stream_rng(10, 0, 0))?.graph;
    let t = 2700;
    let tr = run_biased_walk(&g, Start::Uniform, &mut stream_rng(10, 0, 1), StopRule::Edges(t), WalkOptions::with_steps())?;
    let green = extract_green(tr.step_log.as_deref().unwrap())?;
    println!("green edges {}, bridges {}, once-visited vertices {}", green.big_phi, green.phi, green.y.len());
    println!("bridge lengths: {:?}", green.bridge_lengths);

    // one urn draw with the same totals
    let draw = polya_urn(green.phi, green.y.len(), &mut stream_rng(10, 0, 2));
    println!("urn draw:       {draw:?}");
    let pmf = first_bridge_pmf(green.phi, green.y.len());
    println!("P(first bridge = 1, 2, 3) = {:.3}, {:.3}, {:.3}", pmf[1], pmf[2], pmf[3]);

    let report = urn_bridge_test(&UrnTestConfig { trials: 5000, ..UrnTestConfig::default() })?;
    for b in &report.buckets {
        println!("{:>12} samples {:5} chi2 {:7.2} df {:2} p {:.3}", b.label(), b.samples, b.chi2, b.df, b.p_value);
    }
    println!("{:.2} of buckets pass at 0.01", report.pass_fraction(0.01));
    Ok(())
}
