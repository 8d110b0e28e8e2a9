use covertime_lab::multigraph::families;
use covertime_lab::seeding::trial_rng;
use covertime_lab::spectral::{hitting_time_exact, hitting_time_mc, hitting_time_zseries, second_eigenvalue, EigenOptions, McOptions};
use covertime_lab::{sample_graph, DisconnectedMode};

#[test]
fn k4_monte_carlo_hitting_time() {
    let mc = hitting_time_mc(&families::complete(4), &[2], McOptions::new(1_000_000, 41)).unwrap();
    assert!((mc.value - 2.25).abs() <= 0.02, "{mc:?}");
    assert!(!mc.flagged);
}

#[test]
fn path_of_three_by_first_step_equations() {
    // h1 = 1 + h0/2, h0 = 1 + h1 => h0 = 4, h1 = 3; pi = (1/4, 1/2, 1/4)
    let x = hitting_time_exact(&families::path(3), &[2]).unwrap();
    assert!((x.value - 2.5).abs() < 1e-12);
}

#[test]
fn series_estimate_respects_the_spectral_gap_bound() {
    let tol = 1e-6;
    for i in 0..20u64 {
        let mut rng = trial_rng(42, i);
        let n = [200, 500, 1000, 2000][i as usize % 4];
        let d = 3 + (i as usize % 2);
        let g = sample_graph(n, d, DisconnectedMode::Resample, &mut rng).unwrap().graph;
        let lambda = second_eigenvalue(&g, EigenOptions::default()).unwrap().lambda_upper();
        let k = 1 + (i as usize % 5);
        let set: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
        let z = hitting_time_zseries(&g, &set, tol).unwrap();
        let bound = n as f64 / k as f64 / (1.0 - lambda) * (1.0 + tol);
        assert!(z.value <= bound, "n={n} d={d} |S|={k}: {} > {bound}", z.value);
    }
}
