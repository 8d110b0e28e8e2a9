use covertime_lab::seeding::stream_rng;
use covertime_lab::structure::extract_green;
use covertime_lab::walkers::{run_biased_walk, Start, StopRule, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode};

#[test]
fn green_edges_stay_above_their_lower_envelope() {
    let n = 10_000usize;
    let delta = 0.05;
    let m = 3 * n / 2;
    let t = ((1.0 - delta) * m as f64).round() as usize;
    let delta0 = 1.0 / (n as f64).ln().ln();
    let floor = (delta0 * delta).sqrt() * n as f64;
    let trials = 100;
    let above = (0..trials)
        .filter(|&i| {
            let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut stream_rng(50, i, 0)).unwrap().graph;
            let tr = run_biased_walk(&g, Start::Uniform, &mut stream_rng(50, i, 1), StopRule::Edges(t), WalkOptions::default()).unwrap();
            tr.phi(t).unwrap() as f64 >= floor
        })
        .count();
    assert!(above as f64 >= 0.95 * trials as f64, "{above} of {trials} above {floor:.1}");
}

#[test]
fn bridge_accounting_on_long_logged_walks() {
    for i in 0..20 {
        let g = sample_graph(2000, 3, DisconnectedMode::Resample, &mut stream_rng(51, i, 0)).unwrap().graph;
        let tr = run_biased_walk(&g, Start::Uniform, &mut stream_rng(51, i, 1), StopRule::Edges(2700), WalkOptions::with_steps()).unwrap();
        let green = extract_green(tr.step_log.as_ref().unwrap()).unwrap();
        assert_eq!(green.bridge_lengths.iter().sum::<usize>(), green.big_phi);
        assert_eq!(green.phi + green.y.len(), green.big_phi);
        assert_eq!(green.big_phi, tr.phi(2700).unwrap() as usize);
        assert!(green.bridge_lengths.iter().all(|&k| k >= 1));
    }
}
