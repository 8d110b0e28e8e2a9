use covertime_lab::multigraph::families;
use covertime_lab::oracle::{exact_edge_process, exact_edge_process_rational, rational, K4_EDGE_COVER};
use covertime_lab::seeding::trial_rng;
use covertime_lab::walkers::{run_biased_walk, Start, StopRule, WalkOptions};
use num_rational::BigRational;

#[test]
fn pinned_k4_value_matches_the_solver() {
    let exact = exact_edge_process_rational(&families::complete(4), 0).unwrap();
    let pinned: BigRational = K4_EDGE_COVER.parse().unwrap();
    assert_eq!(exact.edge(6).unwrap(), &pinned);
    assert_eq!(pinned, rational(15, 2));
}

#[test]
fn k4_simulation_from_vertex_zero_is_within_one_percent() {
    let g = families::complete(4);
    let target = exact_edge_process(&g, 0).unwrap().edge_cover[5];
    let runs = 100_000;
    let total: u64 = (0..runs)
        .map(|i| {
            let mut rng = trial_rng(6, i);
            run_biased_walk(&g, Start::Vertex(0), &mut rng, StopRule::AllEdges, WalkOptions::default())
                .unwrap()
                .edge_cover(6)
                .unwrap()
        })
        .sum();
    let mean = total as f64 / runs as f64;
    assert!((mean - target).abs() <= 0.01 * target, "mean {mean}, exact {target}");
}

#[test]
fn vertex_cover_expectations_match_simulation_on_petersen() {
    let g = families::petersen();
    let exact = exact_edge_process(&g, 0).unwrap();
    let runs = 40_000;
    let mut sums = vec![0u64; g.n()];
    for i in 0..runs {
        let mut rng = trial_rng(7, i);
        let t = run_biased_walk(&g, Start::Vertex(0), &mut rng, StopRule::AllVertices, WalkOptions::default()).unwrap();
        for (s, slot) in sums.iter_mut().enumerate() {
            *slot += t.vertex_cover(s + 1).unwrap();
        }
    }
    for (s, &sum) in sums.iter().enumerate() {
        let mean = sum as f64 / runs as f64;
        let want = exact.vertex_cover[s];
        assert!((mean - want).abs() <= 0.02 * want.max(1.0), "C_V({}) mean {mean} exact {want}", s + 1);
    }
}
