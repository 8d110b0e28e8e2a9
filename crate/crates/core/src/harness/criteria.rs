//! The acceptance criteria, runnable from `validate` and the test suite.
//!
//! Each criterion collects named sub-checks; a criterion passes when every
//! sub-check does and nothing errored. `quick` lowers trial counts only.

use std::io::Write;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::commands::{root_order, run_command};
use super::plan::{Command, ExperimentPlan};
use super::rows::Aggregator;
use crate::error::{Error, Result};
use crate::multigraph::{families, membership, neighborhood_sizes, realize, sample_graph, sample_pairing, DisconnectedMode, Multigraph};
use crate::oracle::{closed_x1, closed_x3, exact_edge_process_rational, solve_recurrences, urn_law_exact, Denominator, K4_EDGE_COVER};
use crate::seeding::{derive_seed, stream_rng, trial_rng, TrialRng};
use crate::spectral::{aks_avoidance, contract, hitting_time_exact, hitting_time_mc, hitting_time_zseries, second_eigenvalue, second_eigenvalue_dense, EigenOptions, McOptions};
use crate::stats::{mean, median};
use crate::structure::{is_root_set, urn_bridge_test, UrnTestConfig};
use crate::walkers::{check_invariants, run_lazy_biased_walk, run_walk, Fault, Start, StopRule, Trajectory, WalkKind, WalkOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Fewer trials, same tolerances.
    pub quick: bool,
    pub seed: u64,
    /// Restrict to these criterion ids.
    pub only: Option<Vec<u32>>,
    /// Negative-control hook: corrupt every walk the invariant suite runs.
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            quick: false,
            seed: 20_240_601,
            only: None,
            fault: None,
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    run: fn(&Ctx, &mut Checks) -> Result<()>,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// `(passed, description)` per sub-check.
    pub checks: Vec<(bool, String)>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CriterionReport {
    /// `PASS`/`FAIL`, id, name, wall time and every sub-check.
    pub fn line(&self) -> String {
        let mut parts: Vec<String> = self
            .checks
            .iter()
            .map(|(ok, s)| if *ok { s.clone() } else { format!("!! {s}") })
            .collect();
        if let Some(e) = &self.error {
            parts.push(format!("!! error: {e}"));
        }
        format!(
            "{} [{:>2}] {} ({:.1} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            parts.join("; ")
        )
    }
}

#[derive(Debug, Clone)]
pub struct ValidationSummary {
    pub reports: Vec<CriterionReport>,
}

impl ValidationSummary {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<u32> {
        self.reports.iter().filter(|r| !r.passed).map(|r| r.id).collect()
    }
}

struct Ctx {
    quick: bool,
    seed: u64,
    fault: Option<Fault>,
}

impl Ctx {
    fn pick(&self, full: usize, quick: usize) -> usize {
        if self.quick {
            quick
        } else {
            full
        }
    }

    /// Seed of sub-experiment `tag` of criterion `id`.
    fn seed(&self, id: u32, tag: u64) -> u64 {
        derive_seed(derive_seed(self.seed, id as u64), tag)
    }
}

#[derive(Default)]
struct Checks {
    items: Vec<(bool, String)>,
}

impl Checks {
    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        self.items.push((ok, msg.into()));
    }

    fn within(&mut self, label: &str, value: f64, lo: f64, hi: f64) {
        self.check(value >= lo && value <= hi, format!("{label} = {value:.4} in [{lo}, {hi}]"));
    }
}

pub fn criteria() -> &'static [Criterion] {
    const LIST: &[Criterion] = &[
        Criterion { id: 1, name: "cubic cover constants", run: cover_constants },
        Criterion { id: 2, name: "even-degree vertex cover", run: even_degree },
        Criterion { id: 3, name: "baseline separation", run: baselines },
        Criterion { id: 4, name: "partial cover law", run: partial_cover_law },
        Criterion { id: 5, name: "trajectory closed forms", run: trajectory_forms },
        Criterion { id: 6, name: "exact oracle agreement", run: oracle_agreement },
        Criterion { id: 7, name: "hitting-time triple agreement", run: hitting_agreement },
        Criterion { id: 8, name: "expanding-set hitting law", run: expanding_set },
        Criterion { id: 9, name: "spectral bounds", run: spectral_bounds },
        Criterion { id: 10, name: "avoidance inequality", run: avoidance },
        Criterion { id: 11, name: "urn equivalence", run: urn_equivalence },
        Criterion { id: 12, name: "root-set prevalence", run: root_sets },
        Criterion { id: 13, name: "invariant suite", run: invariant_suite },
    ];
    LIST
}

pub fn run_criterion(c: &Criterion, opts: &ValidateOptions) -> CriterionReport {
    let ctx = Ctx {
        quick: opts.quick,
        seed: opts.seed,
        fault: opts.fault,
    };
    let mut checks = Checks::default();
    let start = Instant::now();
    let res = (c.run)(&ctx, &mut checks);
    let elapsed = start.elapsed();
    let error = res.err().map(|e| e.to_string());
    let passed = error.is_none() && !checks.items.is_empty() && checks.items.iter().all(|(ok, _)| *ok);
    CriterionReport {
        id: c.id,
        name: c.name,
        passed,
        checks: checks.items,
        error,
        elapsed,
    }
}

/// Runs the selected criteria in order, writing one line per criterion as
/// it finishes. Failures are collected, never fatal.
pub fn cmd_validate<W: Write + ?Sized>(opts: &ValidateOptions, out: &mut W) -> Result<ValidationSummary> {
    let mut reports = Vec::new();
    for c in criteria() {
        if opts.only.as_ref().is_some_and(|ids| !ids.contains(&c.id)) {
            continue;
        }
        let r = run_criterion(c, opts);
        writeln!(out, "{}", r.line())?;
        out.flush()?;
        reports.push(r);
    }
    if reports.is_empty() {
        return Err(Error::Usage("no criterion selected".into()));
    }
    let summary = ValidationSummary { reports };
    let total: f64 = summary.reports.iter().map(|r| r.elapsed.as_secs_f64()).sum();
    writeln!(
        out,
        "{} of {} criteria passed in {total:.1} s",
        summary.reports.len() - summary.failures().len(),
        summary.reports.len()
    )?;
    Ok(summary)
}

fn connected_graph(n: usize, d: usize, rng: &mut TrialRng) -> Result<Multigraph> {
    Ok(sample_graph(n, d, DisconnectedMode::Resample, rng)?.graph)
}

/// Walk of trial `i` on its own connected graph; graph and walk use
/// separate streams.
fn cover_run(n: usize, d: usize, kind: WalkKind, seed: u64, i: usize, stop: StopRule) -> Result<Trajectory> {
    let g = connected_graph(n, d, &mut stream_rng(seed, i as u64, 0))?;
    let mut rng = stream_rng(seed, i as u64, 1);
    run_walk(&g, kind, Start::Uniform, &mut rng, stop, WalkOptions::decimated(usize::MAX))
}

fn full_covers(n: usize, d: usize, kind: WalkKind, trials: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let tr = cover_run(n, d, kind, seed, i, StopRule::AllEdges)?;
            Ok((
                tr.full_vertex_cover().expect("vertex cover") as f64,
                tr.full_edge_cover().expect("edge cover") as f64,
            ))
        })
        .collect()
}

fn cover_constants(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 100_000;
    let runs = full_covers(n, 3, WalkKind::BiasedEdgeProcess, ctx.pick(20, 4), ctx.seed(1, 0))?;
    let nl = n as f64 * (n as f64).ln();
    c.within("mean C_V(n)/(n ln n)", mean(&runs.iter().map(|r| r.0 / nl).collect::<Vec<_>>()), 0.85, 1.15);
    c.within("mean C_E(3n/2)/(1.5 n ln n)", mean(&runs.iter().map(|r| r.1 / (1.5 * nl)).collect::<Vec<_>>()), 0.85, 1.15);
    Ok(())
}

fn even_degree(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 100_000;
    let runs = full_covers(n, 4, WalkKind::BiasedEdgeProcess, ctx.pick(20, 4), ctx.seed(2, 0))?;
    c.within("mean C_V(n)/n (d = 4)", mean(&runs.iter().map(|r| r.0 / n as f64).collect::<Vec<_>>()), 1.85, 2.25);
    Ok(())
}

fn baselines(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 10_000;
    let trials = ctx.pick(20, 6);
    let seed = ctx.seed(3, 0);
    let nl = n as f64 * (n as f64).ln();
    let norm = |runs: &[(f64, f64)], pick: fn(&(f64, f64)) -> f64| mean(&runs.iter().map(|r| pick(r) / nl).collect::<Vec<_>>());
    let simple = full_covers(n, 3, WalkKind::SimpleWalk, trials, seed)?;
    let nb = full_covers(n, 3, WalkKind::NonBacktrackingWalk, trials, seed)?;
    let biased = full_covers(n, 3, WalkKind::BiasedEdgeProcess, trials, seed)?;
    let simple_v = norm(&simple, |r| r.0);
    let biased_v = norm(&biased, |r| r.0);
    c.within("simple C_V/(n ln n)", simple_v, 1.6, 2.4);
    c.within("non-backtracking C_V/(n ln n)", norm(&nb, |r| r.0), 0.8, 1.2);
    c.within("non-backtracking C_E/(n ln n)", norm(&nb, |r| r.1), 1.2, 1.8);
    c.check(biased_v < simple_v, format!("biased C_V/(n ln n) = {biased_v:.4} < simple {simple_v:.4}"));
    Ok(())
}

fn partial_cover_law(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 100_000usize;
    let nf = n as f64;
    let ln = nf.ln();
    let s = n - (nf / ln).floor() as usize;
    let t = ((1.0 - ln.powi(-2)) * 1.5 * nf).floor() as usize;
    let seed = ctx.seed(4, 0);
    let runs: Vec<(f64, f64)> = (0..ctx.pick(20, 4))
        .into_par_iter()
        .map(|i| {
            let tr = cover_run(n, 3, WalkKind::BiasedEdgeProcess, seed, i, StopRule::Edges(t))?;
            let cv = tr.vertex_cover(s).ok_or_else(|| Error::NoConvergence(format!("C_V({s}) not reached by C_E({t})")))?;
            Ok((cv as f64, tr.edge_cover(t).expect("stopped at t") as f64))
        })
        .collect::<Result<_>>()?;
    let v_scale = nf * (nf / (n - s + 1) as f64).ln();
    let e_scale = 1.5 * nf * (3.0 * nf / (3 * n - 2 * t + 1) as f64).ln();
    c.within(
        &format!("mean C_V({s})/(n ln(n/(n-s+1)))"),
        mean(&runs.iter().map(|r| r.0 / v_scale).collect::<Vec<_>>()),
        0.8,
        1.2,
    );
    c.within(
        &format!("mean C_E({t})/(1.5 n ln(3n/(3n-2t+1)))"),
        mean(&runs.iter().map(|r| r.1 / e_scale).collect::<Vec<_>>()),
        0.8,
        1.2,
    );
    Ok(())
}

fn trajectory_forms(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 100_000usize;
    let m = 3 * n / 2;
    let deltas = [0.5, 0.1, 0.01];
    let ts: Vec<usize> = deltas.iter().map(|d| ((1.0 - d) * m as f64).round() as usize).collect();
    let seed = ctx.seed(5, 0);
    let tmax = *ts.iter().max().expect("checkpoints");
    let obs: Vec<Vec<(f64, f64)>> = (0..ctx.pick(10, 3))
        .into_par_iter()
        .map(|i| {
            let g = connected_graph(n, 3, &mut stream_rng(seed, i as u64, 0))?;
            let mut rng = stream_rng(seed, i as u64, 1);
            let tr = run_walk(&g, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut rng, StopRule::Edges(tmax), WalkOptions::default())?;
            Ok(ts
                .iter()
                .map(|&t| {
                    let p = tr.at(t).expect("undecimated");
                    let delta = (m - t) as f64 / m as f64;
                    let x3 = p.x[3] as f64 / (n as f64 * delta.powf(1.5));
                    let x1 = p.x[1] as f64 / ((3 * n - 2 * t) as f64 * (1.0 - delta.sqrt()));
                    (x3, x1)
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    for (j, delta) in deltas.iter().enumerate() {
        c.within(&format!("delta={delta}: mean X3/(n delta^1.5)"), mean(&obs.iter().map(|o| o[j].0).collect::<Vec<_>>()), 0.9, 1.1);
        c.within(
            &format!("delta={delta}: mean X1/((3n-2t)(1-delta^0.5))"),
            mean(&obs.iter().map(|o| o[j].1).collect::<Vec<_>>()),
            0.9,
            1.1,
        );
    }
    let big = 1_000_000usize;
    let table = solve_recurrences(big, 3, Denominator::MinusOne)?;
    let mut worst: f64 = 0.0;
    for delta in deltas {
        let t = ((1.0 - delta) * (3 * big / 2) as f64).round() as usize;
        let x = table.at(t).expect("t within table");
        worst = worst
            .max((x[3] / closed_x3(big, t) - 1.0).abs())
            .max((x[1] / closed_x1(big, t) - 1.0).abs());
    }
    c.check(worst <= 1e-3, format!("recurrences vs closed forms at n = 1e6: worst relative gap {worst:.2e} <= 1e-3"));
    Ok(())
}

fn oracle_agreement(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let k4 = families::complete(4);
    let exact = exact_edge_process_rational(&k4, 0)?;
    let pinned: BigRational = K4_EDGE_COVER.parse().expect("pinned rational");
    let e6 = exact.edge(6).expect("six edges").clone();
    c.check(e6 == pinned, format!("exact E[C_E(6)] on K4 = {e6} (pinned {pinned})"));
    let target = num_traits::ToPrimitive::to_f64(&e6).unwrap_or(f64::NAN);
    let runs = ctx.pick(100_000, 20_000);
    let seed = ctx.seed(6, 0);
    let sims: Vec<f64> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            run_walk(&k4, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::decimated(usize::MAX))
                .map(|t| t.full_edge_cover().expect("covered") as f64)
        })
        .collect::<Result<_>>()?;
    let m = mean(&sims);
    c.check(
        (m - target).abs() <= 0.01 * target,
        format!("simulated K4 C_E(6) over {runs} runs = {m:.4}, within 1% of {target}"),
    );
    let triple = families::triple_edge();
    let tseed = ctx.seed(6, 1);
    let bad = (0..10_000)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = trial_rng(tseed, i as u64);
            run_walk(&triple, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut rng, StopRule::AllEdges, WalkOptions::default())
                .map(|t| t.full_edge_cover() != Some(3))
                .unwrap_or(true)
        })
        .count();
    c.check(bad == 0, format!("triple edge C_E(3) = 3 in {} of 10000 runs", 10_000 - bad));
    Ok(())
}

/// Small named graphs and sampled regular graphs, all with at most 2000 vertices.
fn hitting_corpus(seed: u64) -> Result<Vec<(String, Multigraph)>> {
    let mut out: Vec<(String, Multigraph)> = vec![
        ("K4".into(), families::complete(4)),
        ("K5".into(), families::complete(5)),
        ("K6".into(), families::complete(6)),
        ("petersen".into(), families::petersen()),
        ("cycle9".into(), families::cycle(9)),
        ("cycle10".into(), families::cycle(10)),
        ("path6".into(), families::path(6)),
        ("cubic-tree3".into(), families::cubic_tree(3)),
        ("triple-edge".into(), families::triple_edge()),
    ];
    let sampled = [(20, 3), (50, 3), (100, 3), (200, 3), (500, 3), (1000, 3), (2000, 3), (30, 4), (100, 4), (400, 4), (200, 5)];
    for (i, &(n, d)) in sampled.iter().enumerate() {
        let g = connected_graph(n, d, &mut trial_rng(seed, i as u64))?;
        out.push((format!("random-{d}-reg-{n}"), g));
    }
    Ok(out)
}

fn hitting_agreement(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let corpus = hitting_corpus(ctx.seed(7, 0))?;
    let graphs = ctx.pick(corpus.len(), 10);
    let sets_per_graph = ctx.pick(5, 2);
    let mut rng = trial_rng(ctx.seed(7, 1), 0);
    let mut cases = Vec::new();
    for (name, g) in corpus.iter().take(graphs) {
        for &k in [1usize, 2, 3, 5, 10].iter().take(sets_per_graph) {
            let size = k.min(g.n() - 1).max(1);
            let set = rand::seq::index::sample(&mut rng, g.n(), size).into_vec();
            cases.push((name.clone(), g, set, ctx.seed(7, 100 + cases.len() as u64)));
        }
    }
    let results: Vec<(String, f64, f64, f64, f64, bool)> = cases
        .par_iter()
        .map(|(name, g, set, seed)| {
            let z = hitting_time_zseries(g, set, 1e-6)?;
            let x = hitting_time_exact(g, set)?;
            let mc = hitting_time_mc(g, set, McOptions::new(10_000, *seed))?;
            Ok((format!("{name} |S|={}", set.len()), z.value, x.value, mc.value, mc.error, mc.flagged))
        })
        .collect::<Result<_>>()?;
    let mut worst_rel: f64 = 0.0;
    let mut failures = Vec::new();
    for (label, z, x, mc, hw, flagged) in &results {
        let det_tol = 1e-4 * x.abs().max(z.abs());
        let mc_tol = det_tol.max(3.0 * hw);
        if (z - x).abs() > det_tol || (mc - x).abs() > mc_tol || (mc - z).abs() > mc_tol || *flagged {
            failures.push(format!("{label}: z={z:.6} exact={x:.6} mc={mc:.4}±{hw:.4}"));
        }
        if *x > 0.0 {
            worst_rel = worst_rel.max((z - x).abs() / x);
        }
    }
    c.check(
        failures.is_empty(),
        format!(
            "{} graphs x {} sets agree pairwise (worst z/exact gap {worst_rel:.1e}){}",
            graphs,
            sets_per_graph,
            if failures.is_empty() { String::new() } else { format!("; disagreements: {}", failures.join(", ")) }
        ),
    );
    let k4 = hitting_time_exact(&families::complete(4), &[0])?.value;
    c.check((k4 - 2.25).abs() <= 1e-12, format!("K4 single-vertex exact hitting time = {k4} (9/4)"));
    Ok(())
}

/// Up to `count` edges whose radius-`omega` balls are trees and pairwise
/// more than `2 omega` apart.
fn distant_tree_like_edges(g: &Multigraph, count: usize, omega: usize, rng: &mut TrialRng) -> Vec<(usize, usize)> {
    let mut edges: Vec<usize> = (0..g.num_edges()).collect();
    edges.shuffle(rng);
    let mut chosen = Vec::new();
    let mut taken: Vec<usize> = Vec::new();
    let d = g.regular_degree().unwrap_or(3);
    for e in edges {
        if chosen.len() == count {
            break;
        }
        let (u, v) = g.endpoints(e);
        if u == v {
            continue;
        }
        let expect: Vec<usize> = (1..=omega).map(|r| 2 * (d - 1).pow(r as u32)).collect();
        if neighborhood_sizes(g, &[u, v], omega) != expect {
            continue;
        }
        if !taken.is_empty() {
            let near = within_distance(g, &[u, v], 2 * omega);
            if taken.iter().any(|&w| near[w]) {
                continue;
            }
        }
        chosen.push((u, v));
        taken.extend([u, v]);
    }
    chosen
}

fn within_distance(g: &Multigraph, from: &[usize], radius: usize) -> Vec<bool> {
    let mut seen = membership(g.n(), from);
    let mut frontier = from.to_vec();
    for _ in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn expanding_set(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 10_000;
    let omega = 3;
    let mut rng = trial_rng(ctx.seed(8, 0), 0);
    let g = connected_graph(n, 3, &mut rng)?;
    let edges = distant_tree_like_edges(&g, 20, omega, &mut rng);
    c.check(edges.len() == 20, format!("found {} of 20 tree-like edges spaced > 2 omega = {}", edges.len(), 2 * omega));
    let set: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let sizes = neighborhood_sizes(&g, &set, omega);
    let expect: Vec<usize> = (1..=omega).map(|r| (1usize << r) * set.len()).collect();
    c.check(sizes == expect, format!("|N_r(S)| = {sizes:?}, hypothesis 2^r |S| = {expect:?}"));
    let target = 3.0 * n as f64 / set.len() as f64;
    let mc = hitting_time_mc(&g, &set, McOptions::new(ctx.pick(10_000, 4_000), ctx.seed(8, 1)))?;
    c.check(
        (mc.value / target - 1.0).abs() <= 0.15 && !mc.flagged,
        format!("MC hitting time {:.1} ± {:.1} within 15% of 3n/|S| = {target}", mc.value, mc.error),
    );
    let z = hitting_time_zseries(&g, &set, 1e-6)?;
    c.check(
        (z.value / target - 1.0).abs() <= 0.15,
        format!("series hitting time {:.1} within 15% of 3n/|S| = {target}", z.value),
    );
    Ok(())
}

fn spectral_bounds(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let seed = ctx.seed(9, 0);
    let reports: Vec<_> = (0..ctx.pick(20, 5))
        .into_par_iter()
        .map(|i| second_eigenvalue(&connected_graph(2000, 3, &mut trial_rng(seed, i as u64))?, EigenOptions::default()))
        .collect::<Result<_>>()?;
    let upper: Vec<f64> = reports.iter().map(|r| r.lambda_upper()).collect();
    let lambdas: Vec<f64> = reports.iter().map(|r| r.lambda).collect();
    let max = upper.iter().copied().fold(0.0, f64::max);
    c.check(reports.iter().all(|r| r.converged), "power iteration converged on every graph");
    c.check(max <= 0.99, format!("max lambda (upper estimate) over {} graphs = {max:.5} <= 0.99", reports.len()));
    c.within("median lambda", median(&lambdas), 0.91, 0.96);
    let cseed = ctx.seed(9, 1);
    let gaps: Vec<f64> = (0..ctx.pick(50, 10))
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cseed, i as u64);
            let g = connected_graph(500, 3, &mut rng)?;
            let set = rand::seq::index::sample(&mut rng, 500, 10).into_vec();
            let whole = second_eigenvalue_dense(&g)?.lambda;
            let part = second_eigenvalue_dense(&contract(&g, &set)?.graph)?.lambda;
            Ok(part - whole)
        })
        .collect::<Result<_>>()?;
    let worst = gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    c.check(
        worst <= 1e-8,
        format!("contraction never raises lambda over {} cases (max increase {worst:.2e})", gaps.len()),
    );
    Ok(())
}

fn avoidance(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 10_000;
    let mut rng = trial_rng(ctx.seed(10, 0), 0);
    let g = connected_graph(n, 3, &mut rng)?;
    let trials = ctx.pick(100_000, 20_000);
    let mut cells = Vec::new();
    for z_size in [n / 20, n / 10] {
        let z = rand::seq::index::sample(&mut rng, n, z_size).into_vec();
        for ell in [5, 10, 20] {
            let r = aks_avoidance(&g, &z, ell, trials, ctx.seed(10, (z_size * 100 + ell) as u64))?;
            cells.push((z_size, ell, r.empirical, r.bound));
        }
    }
    for (z, ell, emp, bound) in cells {
        c.check(emp <= bound, format!("|Z|={z} l={ell}: {emp:.4} <= {bound:.4}"));
    }
    Ok(())
}

fn urn_equivalence(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let cfg = UrnTestConfig {
        seed: ctx.seed(11, 0),
        trials: ctx.pick(UrnTestConfig::default().trials, 6_000),
        ..UrnTestConfig::default()
    };
    let report = urn_bridge_test(&cfg)?;
    let frac = report.pass_fraction(0.01);
    c.check(
        !report.buckets.is_empty() && frac >= 0.95,
        format!(
            "{} of {} buckets pass at 0.01 ({:.3}) from {} walks",
            report.buckets.iter().filter(|b| b.p_value >= 0.01).count(),
            report.buckets.len(),
            frac,
            report.observations
        ),
    );
    let mut ok = true;
    for phi in 1..=3usize {
        for m in 0..=2usize {
            let law = urn_law_exact(phi, m);
            let compositions = binomial(phi + m - 1, m);
            let each = BigRational::new(1.into(), (compositions as i64).into());
            let total: BigRational = law.values().fold(BigRational::zero(), |a, p| a + p);
            ok &= law.len() == compositions && total.is_one() && law.values().all(|p| *p == each);
        }
    }
    c.check(ok, "exact urn law is uniform over compositions for phi <= 3, m <= 2");
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn root_sets(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let n = 100_000usize;
    let delta = 0.01;
    let ell = root_order(delta)?;
    let m = 3 * n / 2;
    let t = ((1.0 - delta) * m as f64).round() as usize;
    let seed = ctx.seed(12, 0);
    let trials = ctx.pick(50, 10);
    let verdicts: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let g = connected_graph(n, 3, &mut stream_rng(seed, i as u64, 0))?;
            let mut rng = stream_rng(seed, i as u64, 1);
            let tr = run_walk(&g, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut rng, StopRule::Edges(t), WalkOptions::decimated(usize::MAX))?;
            Ok(is_root_set(&g, &tr.unfinished_vertices(), ell).verdict)
        })
        .collect::<Result<_>>()?;
    let rate = verdicts.iter().filter(|&&v| v).count() as f64 / trials as f64;
    c.check(rate >= 0.9, format!("root set of order {ell:.3} in {rate:.2} of {trials} trials (>= 0.9)"));
    Ok(())
}

fn invariant_suite(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let cases = ctx.pick(1000, 200);
    let seed = ctx.seed(13, 0);
    let fault = ctx.fault;

    let walk_failures: Vec<String> = (0..cases)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let (n, d) = small_dims(&mut rng);
            let kind = match rng.random_range(0..3) {
                0 => WalkKind::SimpleWalk,
                1 if d >= 2 => WalkKind::NonBacktrackingWalk,
                _ => WalkKind::BiasedEdgeProcess,
            };
            let opts = WalkOptions {
                fault,
                ..WalkOptions::with_steps()
            };
            let g = match connected_graph(n, d, &mut rng) {
                Ok(g) => g,
                Err(e) => return Some(e.to_string()),
            };
            // far above any cover time at these sizes; a faulty walk may never cover
            let budget = 100 * (g.num_edges() * n) as u64 + 1000;
            let res = run_walk(&g, kind, Start::Uniform, &mut rng, StopRule::StepBudget(budget), opts)
                .map_err(|e| e.to_string())
                .and_then(|t| {
                    check_invariants(&t)?;
                    match t.full_edge_cover() {
                        Some(_) => Ok(()),
                        None => Err(format!("edges not covered within {budget} steps")),
                    }
                });
            let lazy = run_lazy_biased_walk(n, d, &mut rng, StopRule::StepBudget(5 * (n * d) as u64), opts)
                .map_err(|e| e.to_string())
                .and_then(|r| check_invariants(&r.trajectory));
            let lazy = match lazy {
                Err(e) if e.contains("disconnected") => Ok(()),
                other => other,
            };
            res.and(lazy).err().map(|e| format!("case {i} (n={n}, d={d}, {kind}): {e}"))
        })
        .collect();
    c.check(
        walk_failures.is_empty(),
        format!(
            "red preference, color conservation, incidence and green identities on {cases} walks{}",
            walk_failures.first().map(|e| format!(" -- first failure: {e}")).unwrap_or_default()
        ),
    );

    let bad_pairings = (0..cases)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = trial_rng(seed ^ 1, i as u64);
            let (n, d) = small_dims(&mut rng);
            match sample_pairing(n, d, &mut rng) {
                Ok(p) => {
                    let g = realize(&p);
                    !p.is_involution() || (0..n).any(|v| g.degree(v) != d) || g.num_edges() != n * d / 2
                }
                Err(_) => true,
            }
        })
        .count();
    c.check(bad_pairings == 0, format!("pairing is a fixed-point-free involution in {} of {cases} samples", cases - bad_pairings));

    let nondeterministic = (0..cases)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = trial_rng(seed ^ 2, i as u64);
            let (n, d) = small_dims(&mut rng);
            let run = |s: u64| -> Option<Trajectory> {
                let mut r = trial_rng(s, i as u64);
                let g = connected_graph(n, d, &mut r).ok()?;
                run_walk(&g, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut r, StopRule::AllEdges, WalkOptions::with_steps()).ok()
            };
            let s = rng.random();
            let (a, b) = (run(s), run(s));
            a.is_none() || a != b
        })
        .count();
    let plan = ExperimentPlan::from_pairs(Command::Cover, &[("n", "60,100"), ("d", "3,4"), ("trials", "5"), ("kind", "biased,simple,nb")])?;
    let render = |threads: usize| -> Result<Vec<u8>> {
        super::with_threads(Some(threads), || {
            let mut buf = Vec::new();
            run_command(&plan, &mut buf).map(|_| buf)
        })?
    };
    let same_bytes = render(1)? == render(3)?;
    c.check(
        nondeterministic == 0 && same_bytes,
        format!(
            "same seed, same walk in {} of {cases} cases; cover CSV identical on 1 and 3 threads: {same_bytes}",
            cases - nondeterministic
        ),
    );

    let non_assoc = (0..cases)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = trial_rng(seed ^ 3, i as u64);
            let len = rng.random_range(1..40);
            let values: Vec<f64> = (0..len).map(|_| rng.random_range(-1e6..1e6) * 10f64.powi(rng.random_range(-8..8))).collect();
            let parts = rng.random_range(1..6);
            let mut whole = Aggregator::new();
            let mut split = vec![Aggregator::new(); parts];
            for &v in &values {
                whole.push(1, 3, "biased", "x", v);
                split[rng.random_range(0..parts)].push(1, 3, "biased", "x", v);
            }
            split.shuffle(&mut rng);
            let mut merged = Aggregator::new();
            for s in &split {
                merged.merge(s);
            }
            merged.rows() != whole.rows()
        })
        .count();
    c.check(non_assoc == 0, format!("aggregation is merge-order independent in {} of {cases} cases", cases - non_assoc));
    Ok(())
}

/// Random small `(n, d)` with `d n` even; `d = 1` only on two vertices.
fn small_dims(rng: &mut TrialRng) -> (usize, usize) {
    loop {
        let n = rng.random_range(2..40);
        let d = rng.random_range(1..6);
        if (n * d) % 2 == 0 && (d >= 2 || n == 2) {
            return (n, d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_one_through_thirteen() {
        let ids: Vec<u32> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=13).collect::<Vec<_>>());
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(2, 0), 1);
    }

    #[test]
    fn distant_edges_are_tree_like_and_apart() {
        let mut rng = trial_rng(5, 0);
        let g = connected_graph(3000, 3, &mut rng).unwrap();
        let edges = distant_tree_like_edges(&g, 10, 2, &mut rng);
        assert_eq!(edges.len(), 10);
        let set: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        assert_eq!(neighborhood_sizes(&g, &set, 2), vec![40, 80]);
        assert!(crate::multigraph::is_connected(&g));
    }
}
