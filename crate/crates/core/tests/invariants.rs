use covertime_lab::harness::{run_command, Aggregator, Command, ExperimentPlan};
use covertime_lab::seeding::stream_rng;
use covertime_lab::walkers::{run_walk, Start, StopRule, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode, WalkKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn same_seed_same_walk(seed in any::<u64>(), n in 3usize..60, d in 2usize..5, k in 0usize..3) {
        prop_assume!(n * d % 2 == 0);
        let kind = [WalkKind::BiasedEdgeProcess, WalkKind::SimpleWalk, WalkKind::NonBacktrackingWalk][k];
        let once = || {
            let g = sample_graph(n, d, DisconnectedMode::Resample, &mut stream_rng(seed, 0, 0)).unwrap().graph;
            run_walk(&g, kind, Start::Uniform, &mut stream_rng(seed, 0, 1), StopRule::StepBudget(20 * n as u64), WalkOptions::default()).unwrap()
        };
        let (a, b) = (once(), once());
        prop_assert_eq!(a.edge_steps, b.edge_steps);
        prop_assert_eq!(a.vertex_steps, b.vertex_steps);
        prop_assert_eq!(a.final_red, b.final_red);
    }

    #[test]
    fn aggregation_ignores_partition_and_order(
        values in prop::collection::vec(-1e12f64..1e12, 1..60),
        split in prop::collection::vec(0usize..3, 60),
    ) {
        let mut whole = Aggregator::new();
        let mut parts = [Aggregator::new(), Aggregator::new(), Aggregator::new()];
        for (i, v) in values.iter().enumerate() {
            whole.push(1, 3, "biased", "m", *v);
            parts[split[i]].push(1, 3, "biased", "m", *v);
        }
        let mut left = parts[0].clone();
        left.merge(&parts[1]);
        left.merge(&parts[2]);
        let mut right = parts[2].clone();
        let mut tail = parts[1].clone();
        tail.merge(&parts[0]);
        right.merge(&tail);
        prop_assert_eq!(left.rows(), whole.rows());
        prop_assert_eq!(right.rows(), whole.rows());
    }
}

#[test]
fn cover_csv_is_independent_of_thread_count() {
    let plan = ExperimentPlan::from_pairs(Command::Cover, &[("n", "300,600"), ("d", "3,4"), ("kind", "biased,simple,nb"), ("trials", "6"), ("seed", "9")]).unwrap();
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let mut buf = Vec::new();
            run_command(&plan, &mut buf).unwrap();
            buf
        })
    };
    let one = render(1);
    assert_eq!(one, render(3));
    assert_eq!(one, render(8));
}
