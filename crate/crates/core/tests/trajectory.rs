use covertime_lab::harness::{run_command, Command, ExperimentPlan};
use covertime_lab::seeding::stream_rng;
use covertime_lab::walkers::{run_biased_walk, Start, StopRule, WalkOptions};
use covertime_lab::{sample_graph, DisconnectedMode};

#[test]
fn untouched_vertices_vanish_near_the_end() {
    let n = 1_000_000usize;
    let gap = ((n as f64).cbrt() / 10.0).ceil() as usize - 1;
    let t = 3 * n / 2 - gap;
    let trials = 10;
    let empty = (0..trials)
        .filter(|&i| {
            let g = sample_graph(n, 3, DisconnectedMode::Resample, &mut stream_rng(60, i, 0)).unwrap().graph;
            let tr = run_biased_walk(&g, Start::Uniform, &mut stream_rng(60, i, 1), StopRule::Edges(t), WalkOptions::decimated(n)).unwrap();
            tr.x(t, 3).unwrap() == 0
        })
        .count();
    assert!(empty as f64 >= 0.9 * trials as f64, "X3 = 0 in {empty} of {trials}");
}

fn metric(csv: &str, n: usize, metric: &str) -> f64 {
    let prefix = format!("{n},3,biased,{metric},");
    let line = csv.lines().find(|l| l.starts_with(&prefix)).unwrap();
    line.split(',').nth(5).unwrap().parse().unwrap()
}

#[test]
fn cubic_cover_trend_over_three_decades() {
    let plan = ExperimentPlan::from_pairs(Command::Cover, &[("n", "1000,10000,100000"), ("d", "3"), ("trials", "10"), ("seed", "61"), ("decimation", "1000000")]).unwrap();
    let mut buf = Vec::new();
    run_command(&plan, &mut buf).unwrap();
    let csv = String::from_utf8(buf).unwrap();
    let per_n: Vec<f64> = [1000, 10_000, 100_000].iter().map(|&n| metric(&csv, n, "cv_n")).collect();
    assert!(per_n[0] < per_n[1] && per_n[1] < per_n[2], "C_V(n)/n = {per_n:?}");
    let per_nlogn: Vec<f64> = [1000, 10_000, 100_000].iter().map(|&n| metric(&csv, n, "cv_nlogn")).collect();
    assert!((per_nlogn[2] / per_nlogn[1] - 1.0).abs() <= 0.1, "C_V(n)/(n ln n) = {per_nlogn:?}");
}
