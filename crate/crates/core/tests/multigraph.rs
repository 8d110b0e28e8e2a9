use std::collections::HashMap;

use covertime_lab::multigraph::{is_simple, neighborhood_sizes};
use covertime_lab::oracle::enumerate_pairings;
use covertime_lab::seeding::{rng_from_seed, trial_rng};
use covertime_lab::stats::chi_square;
use covertime_lab::{realize, sample_graph, sample_pairing, DisconnectedMode};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn pairings_are_uniform_over_all_matchings() {
    let all = enumerate_pairings(4, 3).unwrap();
    assert_eq!(all.len(), 10_395);
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, p)| (p.as_slice().to_vec(), i)).collect();
    let samples = 1_000_000u64;
    let mut counts = vec![0u64; all.len()];
    let mut rng = rng_from_seed(11);
    for _ in 0..samples {
        let p = sample_pairing(4, 3, &mut rng).unwrap();
        counts[index[p.as_slice()]] += 1;
    }
    let k = all.len() as f64;
    let expected = samples as f64 / k;
    let sigma = (samples as f64 * (1.0 / k) * (1.0 - 1.0 / k)).sqrt();
    let worst = counts.iter().map(|&c| (c as f64 - expected).abs() / sigma).fold(0.0, f64::max);
    assert!(worst <= 4.0, "largest deviation {worst:.2} sigma");
    let gof = chi_square(&counts, &vec![1.0 / k; all.len()], 5.0);
    assert!(gof.p_value > 0.001, "{gof:?}");
}

#[test]
fn four_sigma_exceedances_follow_the_null_count() {
    // Poisson tail with mean 10395 * P(|Z| > 4) ~ 0.66: P(count >= 5) < 1e-3
    let all = enumerate_pairings(4, 3).unwrap();
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, p)| (p.as_slice().to_vec(), i)).collect();
    let samples = 1_000_000u64;
    let mut counts = vec![0u64; all.len()];
    let mut rng = rng_from_seed(13);
    for _ in 0..samples {
        counts[index[sample_pairing(4, 3, &mut rng).unwrap().as_slice()]] += 1;
    }
    let k = all.len() as f64;
    let expected = samples as f64 / k;
    let sigma = (expected * (1.0 - 1.0 / k)).sqrt();
    let over = counts.iter().filter(|&&c| (c as f64 - expected).abs() > 4.0 * sigma).count();
    assert!(over < 5, "{over} matchings beyond 4 sigma");
}

#[test]
fn simple_fraction_of_cubic_samples_is_near_e_minus_two() {
    let graphs = 200;
    let simple = (0..graphs)
        .filter(|&i| {
            let mut rng = trial_rng(12, i);
            is_simple(&realize(&sample_pairing(10_000, 3, &mut rng).unwrap()))
        })
        .count();
    let frac = simple as f64 / graphs as f64;
    assert!((frac - (-2f64).exp()).abs() <= 0.05, "simple fraction {frac}");
}

#[test]
fn one_edge_neighbourhoods_are_tree_like() {
    let samples = 1000;
    let good = (0..samples)
        .filter(|&i| {
            let mut rng = trial_rng(13, i);
            let g = sample_graph(10_000, 3, DisconnectedMode::Flag, &mut rng).unwrap().graph;
            let e = rng.random_range(0..g.num_edges());
            let (u, v) = g.endpoints(e);
            neighborhood_sizes(&g, &[u, v], 3) == vec![4, 8, 16]
        })
        .count();
    assert!(good as f64 >= 0.95 * samples as f64, "{good} of {samples}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sampled_pairings_are_fixed_point_free_involutions(n in 2usize..60, d in 1usize..7, seed in any::<u64>()) {
        prop_assume!(n * d % 2 == 0);
        let p = sample_pairing(n, d, &mut rng_from_seed(seed)).unwrap();
        prop_assert!(p.is_involution());
        for x in 0..n * d {
            prop_assert_ne!(p.mate(x), x);
            prop_assert_eq!(p.mate(p.mate(x)), x);
        }
        let g = realize(&p);
        prop_assert_eq!(g.num_edges(), n * d / 2);
        prop_assert!((0..n).all(|v| g.degree(v) == d));
    }
}
