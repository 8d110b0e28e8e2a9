use proptest::prelude::*;

use covertime_lab::walkers::*;
use covertime_lab::{Error, Multigraph};
use covertime_lab::multigraph::{families, sample_graph, DisconnectedMode};
use covertime_lab::seeding::rng_from_seed;
use covertime_lab::stats::chi_square_two_sample;

#[test]
fn triple_edge_takes_three_fresh_steps() {
    let g = families::triple_edge();
    for seed in 0..20 {
        let mut rng = rng_from_seed(seed);
        let t = run_biased_walk(&g, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::with_steps()).unwrap();
        assert_eq!(t.edge_cover(3), Some(3));
        assert_eq!(t.vertex_cover(2), Some(1));
        check_invariants(&t).unwrap();
    }
}

#[test]
fn single_loop_needs_one_step() {
    let g = families::single_loop();
    let mut rng = rng_from_seed(1);
    let t = run_biased_walk(&g, Start::Vertex(0), &mut rng, StopRule::AllEdges, WalkOptions::with_steps()).unwrap();
    assert_eq!(t.full_edge_cover(), Some(1));
    assert_eq!(t.x(1, 0), Some(1));
}

#[test]
fn simple_walk_on_k4_returns_with_probability_one_third() {
    let g = families::complete(4);
    let mut rng = rng_from_seed(9);
    let trials = 60_000;
    let mut back = 0;
    for _ in 0..trials {
        let t = run_baseline_walk(&g, WalkKind::SimpleWalk, Start::Vertex(0), &mut rng, StopRule::StepBudget(2), WalkOptions::with_steps())
            .unwrap();
        let log = t.step_log.unwrap();
        back += (log[1].to == 0) as u32;
    }
    let p = back as f64 / trials as f64;
    let sd = (1.0 / 3.0 * 2.0 / 3.0 / trials as f64).sqrt();
    assert!((p - 1.0 / 3.0).abs() < 4.0 * sd, "p = {p}");
}

#[test]
fn non_backtracking_walk_never_reverses() {
    let mut rng = rng_from_seed(4);
    let g = sample_graph(50, 3, DisconnectedMode::Resample, &mut rng).unwrap().graph;
    let t = run_baseline_walk(&g, WalkKind::NonBacktrackingWalk, Start::Uniform, &mut rng, StopRule::StepBudget(2000), WalkOptions::with_steps())
        .unwrap();
    let log = t.step_log.unwrap();
    assert!(log.windows(2).all(|w| w[1].via != w[0].arrival));
}

#[test]
fn baseline_rejects_biased_kind() {
    let g = families::complete(4);
    let mut rng = rng_from_seed(0);
    let r = run_baseline_walk(&g, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::default());
    assert!(matches!(r, Err(Error::InvalidParameters(_))));
}

#[test]
fn disconnected_graph_is_reported() {
    let g = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    let mut rng = rng_from_seed(0);
    let r = run_biased_walk(&g, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::default());
    assert_eq!(r.unwrap_err(), Error::Disconnected);
}

#[test]
fn blue_first_fault_breaks_invariants() {
    let mut rng = rng_from_seed(2);
    let g = sample_graph(200, 3, DisconnectedMode::Resample, &mut rng).unwrap().graph;
    let opts = WalkOptions {
        record_steps: true,
        decimation: 1,
        fault: Some(Fault::BlueFirst),
    };
    let t = run_biased_walk(&g, Start::Uniform, &mut rng, StopRule::StepBudget(5000), opts).unwrap();
    assert!(check_invariants(&t).is_err());
}

#[test]
fn decimation_keeps_first_and_last_samples() {
    let mut rng = rng_from_seed(8);
    let g = sample_graph(100, 3, DisconnectedMode::Resample, &mut rng).unwrap().graph;
    let t = run_biased_walk(&g, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::decimated(7)).unwrap();
    let ts: Vec<usize> = t.samples().map(|p| p.t).collect();
    assert_eq!(ts[0], 0);
    assert_eq!(*ts.last().unwrap(), 150);
    assert!(ts[1..ts.len() - 1].iter().all(|t| t % 7 == 0));
    check_invariants(&t).unwrap();
}

#[test]
fn csv_has_schema_header_and_one_row_per_sample() {
    let g = families::complete(4);
    let mut rng = rng_from_seed(3);
    let t = run_biased_walk(&g, Start::Vertex(0), &mut rng, StopRule::AllEdges, WalkOptions::default()).unwrap();
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# covertime-lab schema v1");
    assert_eq!(lines[1], "t,steps,X0,X1,X2,X3,Phi,delta");
    assert_eq!(lines.len(), 2 + 7);
    assert_eq!(lines[2], "0,0,0,0,0,4,0,1.000000000");
}

#[test]
fn tau_matches_vertex_cover_bound() {
    let mut rng = rng_from_seed(12);
    let g = sample_graph(300, 3, DisconnectedMode::Resample, &mut rng).unwrap().graph;
    let t = run_biased_walk(&g, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::default()).unwrap();
    for s in 2..=300 {
        let tau = t.tau(s).unwrap();
        assert!(t.vertex_cover(s).unwrap() <= t.edge_cover(tau).unwrap());
    }
    assert!(t.unfinished_vertices().is_empty());
}

#[test]
fn lazy_walk_is_deterministic_and_consistent() {
    let a = run_lazy_biased_walk(40, 3, &mut rng_from_seed(77), StopRule::AllEdges, WalkOptions::with_steps()).unwrap();
    let b = run_lazy_biased_walk(40, 3, &mut rng_from_seed(77), StopRule::AllEdges, WalkOptions::with_steps()).unwrap();
    assert_eq!(a.trajectory, b.trajectory);
    assert_eq!(a.exposed, b.exposed);
    assert!(a.exposure_is_involution());
    check_invariants(&a.trajectory).unwrap();
    let pairing = a.pairing().expect("full cover exposes every point");
    assert!(pairing.is_involution());
}

#[test]
fn lazy_partial_run_exposes_only_walked_points() {
    let run = run_lazy_biased_walk(100, 3, &mut rng_from_seed(5), StopRule::Edges(20), WalkOptions::with_steps()).unwrap();
    assert!(run.exposure_is_involution());
    let exposed = run.exposed.iter().filter(|m| m.is_some()).count();
    assert_eq!(exposed, 40);
    assert!(run.pairing().is_none());
}

#[test]
fn lazy_and_eager_walks_agree_in_law() {
    // distribution of C_E(3) on two vertices of degree 3
    let runs = 100_000;
    let mut lazy = vec![0u64; 16];
    let mut eager = vec![0u64; 16];
    let mut rng = rng_from_seed(2024);
    for _ in 0..runs {
        let t = run_lazy_biased_walk(2, 3, &mut rng, StopRule::AllEdges, WalkOptions::default()).unwrap().trajectory;
        lazy[(t.edge_cover(3).unwrap() as usize).min(15)] += 1;
        let g = sample_graph(2, 3, DisconnectedMode::Flag, &mut rng).unwrap().graph;
        let t = run_biased_walk(&g, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::default()).unwrap();
        eager[(t.edge_cover(3).unwrap() as usize).min(15)] += 1;
    }
    let r = chi_square_two_sample(&lazy, &eager, 5.0);
    assert!(r.p_value > 0.01, "p = {}", r.p_value);
    assert!(r.df >= 2);
}

fn kind_strategy() -> impl Strategy<Value = WalkKind> {
    prop_oneof![
        Just(WalkKind::BiasedEdgeProcess),
        Just(WalkKind::SimpleWalk),
        Just(WalkKind::NonBacktrackingWalk),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn invariants_hold_on_random_instances(
        n in 2usize..24,
        d in 2usize..6,
        kind in kind_strategy(),
        seed in any::<u64>(),
        budget in 1u64..400,
    ) {
        prop_assume!(n * d % 2 == 0);
        let mut rng = rng_from_seed(seed);
        let sampled = sample_graph(n, d, DisconnectedMode::Flag, &mut rng).unwrap();
        prop_assume!(sampled.connected);
        let g = sampled.graph;
        let stop = if kind == WalkKind::BiasedEdgeProcess { StopRule::AllEdges } else { StopRule::StepBudget(budget) };
        let t = run_walk(&g, kind, Start::Uniform, &mut rng, stop, WalkOptions::with_steps()).unwrap();
        prop_assert_eq!(check_invariants(&t), Ok(()));
        if kind == WalkKind::BiasedEdgeProcess {
            prop_assert_eq!(t.edges_discovered(), g.num_edges());
            prop_assert_eq!(t.vertices_visited(), n);
            prop_assert!(t.unfinished_vertices().is_empty());
        }
    }

    #[test]
    fn lazy_invariants_hold(n in 2usize..30, seed in any::<u64>()) {
        let d = if n % 2 == 0 { 3 } else { 4 };
        match run_lazy_biased_walk(n, d, &mut rng_from_seed(seed), StopRule::AllEdges, WalkOptions::with_steps()) {
            Ok(run) => {
                prop_assert!(run.exposure_is_involution());
                prop_assert_eq!(check_invariants(&run.trajectory), Ok(()));
            }
            Err(e) => prop_assert_eq!(e, Error::Disconnected),
        }
    }
}
