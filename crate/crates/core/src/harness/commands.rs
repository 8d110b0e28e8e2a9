use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use super::plan::{Checkpoint, Command, ExperimentPlan};
use super::rows::{Aggregator, SCHEMA_HEADER};
use crate::error::{Error, Result};
use crate::multigraph::{sample_graph, write_edge_list, DisconnectedMode, Multigraph};
use crate::oracle::{solve_recurrences, Denominator};
use crate::seeding::{derive_seed, derive_stream, stream_rng, TrialRng};
use crate::spectral::{second_eigenvalue, EigenOptions};
use crate::stats::Summary;
use crate::structure::{is_root_set, synthetic_null, urn_bridge_test, UrnTestConfig};
use crate::walkers::{run_walk, Start, StopRule, WalkKind, WalkOptions};

const GRAPH_STREAM: u64 = 0;

fn cell_seed(master: u64, n: usize, d: usize) -> u64 {
    derive_stream(master, n as u64, d as u64)
}

fn walk_stream(kind: WalkKind) -> u64 {
    match kind {
        WalkKind::BiasedEdgeProcess => 1,
        WalkKind::SimpleWalk => 2,
        WalkKind::NonBacktrackingWalk => 3,
    }
}

fn mode(plan: &ExperimentPlan) -> DisconnectedMode {
    if plan.resample_disconnected {
        DisconnectedMode::Resample
    } else {
        DisconnectedMode::Flag
    }
}

/// Graph of trial `i` in cell `(n, d)`, shared by every walk kind.
fn trial_graph(plan: &ExperimentPlan, n: usize, d: usize, i: usize) -> Result<(Multigraph, bool)> {
    let mut rng = stream_rng(cell_seed(plan.seed, n, d), i as u64, GRAPH_STREAM);
    let s = sample_graph(n, d, mode(plan), &mut rng)?;
    Ok((s.graph, s.connected))
}

fn walk_rng(plan: &ExperimentPlan, n: usize, d: usize, i: usize, kind: WalkKind) -> TrialRng {
    stream_rng(cell_seed(plan.seed, n, d), i as u64, walk_stream(kind))
}

fn cells(plan: &ExperimentPlan) -> Vec<(usize, usize)> {
    plan.n.iter().flat_map(|&n| plan.d.iter().map(move |&d| (n, d))).collect()
}

/// Dispatches a plan to its command, writing CSV to `out`.
pub fn run_command<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    match plan.command {
        Command::Gen => cmd_gen(plan, out),
        Command::Cover => cmd_cover(plan, out),
        Command::Sweep => cmd_sweep(plan, out),
        Command::Trajectory => cmd_trajectory(plan, out),
        Command::Spectra => cmd_spectra(plan, out),
        Command::RootSet => cmd_rootset(plan, out),
        Command::UrnTest => cmd_urntest(plan, out),
        Command::Validate => Err(Error::Usage("validate is run through cmd_validate".into())),
    }
}

/// Runs the plan into `plan.out` (or stdout) and writes the plot script if
/// asked to.
pub fn run_to_destination(plan: &ExperimentPlan) -> Result<()> {
    match &plan.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            run_command(plan, &mut w)?;
            w.flush()?;
            if plan.emit_plot_script {
                let script = plot_script(plan, path)
                    .ok_or_else(|| Error::Usage(format!("no plot script for `{}`", plan.command.name())))?;
                std::fs::write(path.with_extension("gp"), script)?;
            }
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            run_command(plan, &mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}

/// Sampled graphs as edge lists, each preceded by a `# graph` comment.
pub fn cmd_gen<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    writeln!(out, "{SCHEMA_HEADER}")?;
    for (n, d) in cells(plan) {
        let graphs: Vec<(Multigraph, bool)> = (0..plan.trials)
            .into_par_iter()
            .map(|i| trial_graph(plan, n, d, i))
            .collect::<Result<_>>()?;
        for (i, (g, connected)) in graphs.iter().enumerate() {
            let seed = derive_seed(cell_seed(plan.seed, n, d), i as u64);
            writeln!(out, "# graph n={n} d={d} trial={i} seed={seed} connected={connected}")?;
            write_edge_list(g, &mut *out)?;
        }
    }
    Ok(())
}

/// Per-trial cover times of one cell: `(connected, C_V(n), C_E(m))` per kind.
fn cover_trials(plan: &ExperimentPlan, n: usize, d: usize) -> Result<Vec<Vec<(WalkKind, bool, u64, u64)>>> {
    let opts = WalkOptions::decimated(plan.decimation);
    (0..plan.trials)
        .into_par_iter()
        .map(|i| {
            let (g, connected) = trial_graph(plan, n, d, i)?;
            plan.kinds
                .iter()
                .map(|&kind| {
                    if !connected {
                        return Ok((kind, false, 0, 0));
                    }
                    let mut rng = walk_rng(plan, n, d, i, kind);
                    let traj = run_walk(&g, kind, Start::Uniform, &mut rng, StopRule::AllEdges, opts)?;
                    let cv = traj.full_vertex_cover().expect("edge cover implies vertex cover");
                    let ce = traj.full_edge_cover().expect("walk ran to edge cover");
                    Ok((kind, true, cv, ce))
                })
                .collect()
        })
        .collect()
}

/// Aggregated cover statistics per `(n, d, kind)`:
///
/// - `cv_nlogn = C_V(n) / (n ln n)`, `cv_n = C_V(n) / n`
/// - `ce_nlogn = C_E(m) / (n ln n)`, `ce_mlogn = C_E(m) / (m ln n)`, `ce_m = C_E(m) / m`
/// - `connected`: 1 per connected sample, 0 otherwise (those are skipped)
pub fn cmd_cover<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    let mut agg = Aggregator::new();
    for (n, d) in cells(plan) {
        let m = (n * d / 2) as f64;
        let nf = n as f64;
        let ln = nf.ln();
        for trial in cover_trials(plan, n, d)? {
            for (kind, connected, cv, ce) in trial {
                let k = kind.name();
                agg.push(n, d, k, "connected", connected as u8 as f64);
                if !connected {
                    continue;
                }
                let (cv, ce) = (cv as f64, ce as f64);
                agg.push(n, d, k, "cv_nlogn", cv / (nf * ln));
                agg.push(n, d, k, "cv_n", cv / nf);
                agg.push(n, d, k, "ce_nlogn", ce / (nf * ln));
                agg.push(n, d, k, "ce_mlogn", ce / (m * ln));
                agg.push(n, d, k, "ce_m", ce / m);
            }
        }
    }
    agg.write_csv(out)
}

/// One row per trial and walk kind with raw cover step counts.
pub fn cmd_sweep<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    writeln!(out, "{SCHEMA_HEADER}")?;
    writeln!(out, "seed,n,d,kind,trial,connected,cv_steps,ce_steps")?;
    for (n, d) in cells(plan) {
        for (i, trial) in cover_trials(plan, n, d)?.into_iter().enumerate() {
            let seed = derive_seed(cell_seed(plan.seed, n, d), i as u64);
            for (kind, connected, cv, ce) in trial {
                if connected {
                    writeln!(out, "{seed},{n},{d},{kind},{i},true,{cv},{ce}")?;
                } else {
                    writeln!(out, "{seed},{n},{d},{kind},{i},false,,")?;
                }
            }
        }
    }
    Ok(())
}

fn default_checkpoints(plan: &ExperimentPlan, fallback: &[f64]) -> Vec<Checkpoint> {
    if plan.checkpoints.is_empty() {
        fallback.iter().map(|&x| Checkpoint::Delta(x)).collect()
    } else {
        plan.checkpoints.clone()
    }
}

/// Observed `X_i`, `Phi` at each checkpoint against the closed forms
/// `n delta^(3/2)`, `(3n - 2t)(1 - delta^(1/2))`, the `Phi` lower envelope
/// `(delta delta_0)^(1/2) n` with `delta_0 = 1 / ln ln n`, and the
/// mean-field recurrences. Predictions are filled in for `d = 3` only.
pub fn cmd_trajectory<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    writeln!(out, "{SCHEMA_HEADER}")?;
    writeln!(out, "n,d,t,delta,metric,count,mean,sd,min,max,predicted,recurrence")?;
    let checkpoints = default_checkpoints(plan, &[1.0, 0.5, 0.1, 0.01]);
    for (n, d) in cells(plan) {
        let m = n * d / 2;
        let mut ts: Vec<usize> = checkpoints.iter().map(|c| c.edges(m)).collect::<Result<_>>()?;
        ts.sort_unstable();
        ts.dedup();
        let tmax = *ts.last().expect("at least one checkpoint");
        let samples: Vec<Option<Vec<(Vec<u32>, u32)>>> = (0..plan.trials)
            .into_par_iter()
            .map(|i| {
                let (g, connected) = trial_graph(plan, n, d, i)?;
                if !connected {
                    return Ok(None);
                }
                let mut rng = walk_rng(plan, n, d, i, WalkKind::BiasedEdgeProcess);
                let traj = run_walk(&g, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut rng, StopRule::Edges(tmax), WalkOptions::default())?;
                Ok(Some(
                    ts.iter()
                        .map(|&t| {
                            let p = traj.at(t).expect("undecimated sample");
                            (p.x.to_vec(), p.phi)
                        })
                        .collect(),
                ))
            })
            .collect::<Result<_>>()?;
        let recurrence = (d == 3 && n % 2 == 0).then(|| solve_recurrences(n, 3, Denominator::MinusOne)).transpose()?;
        let nf = n as f64;
        for (j, &t) in ts.iter().enumerate() {
            let delta = (m - t) as f64 / m as f64;
            let free = (d * n - 2 * t) as f64;
            let rec = recurrence.as_ref().and_then(|r| r.at(t));
            let mut metric = |name: &str, pick: &dyn Fn(&(Vec<u32>, u32)) -> f64, predicted: Option<f64>, rec_value: Option<f64>| -> Result<()> {
                let s: Summary = samples.iter().flatten().map(|v| pick(&v[j])).collect();
                let st = s.stats();
                let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
                writeln!(
                    out,
                    "{n},{d},{t},{delta},{name},{},{},{},{},{},{},{}",
                    st.count,
                    st.mean,
                    st.sd,
                    st.min,
                    st.max,
                    opt(predicted),
                    opt(rec_value)
                )?;
                Ok(())
            };
            let cubic = d == 3;
            for i in 0..=d {
                let predicted = match i {
                    3 if cubic => Some(nf * delta.powf(1.5)),
                    1 if cubic => Some(free * (1.0 - delta.sqrt())),
                    _ => None,
                };
                let rec_value = rec.map(|x| x[i]);
                metric(&format!("X{i}"), &|v| v.0[i] as f64, predicted, rec_value)?;
            }
            let delta0 = 1.0 / nf.ln().ln();
            metric("Phi", &|v| v.1 as f64, cubic.then(|| (delta0 * delta).sqrt() * nf), None)?;
            metric("Xd_zero", &|v| (v.0[d] == 0) as u8 as f64, None, None)?;
        }
    }
    Ok(())
}

/// Second transition eigenvalue of `trials` sampled graphs per cell.
pub fn cmd_spectra<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    writeln!(out, "{SCHEMA_HEADER}")?;
    writeln!(out, "n,d,seed,lambda,lambda_upper,method,iterations,residual,converged")?;
    for (n, d) in cells(plan) {
        let reports: Vec<Option<_>> = (0..plan.trials)
            .into_par_iter()
            .map(|i| {
                let (g, connected) = trial_graph(plan, n, d, i)?;
                if !connected {
                    return Ok(None);
                }
                second_eigenvalue(&g, EigenOptions::default()).map(Some)
            })
            .collect::<Result<_>>()?;
        for (i, r) in reports.iter().enumerate() {
            let seed = derive_seed(cell_seed(plan.seed, n, d), i as u64);
            match r {
                Some(r) => writeln!(
                    out,
                    "{n},{d},{seed},{},{},{},{},{},{}",
                    r.lambda,
                    r.lambda_upper(),
                    r.method.name(),
                    r.iterations,
                    r.residual,
                    r.converged
                )?,
                None => writeln!(out, "# trial {i} seed {seed}: disconnected sample skipped")?,
            }
        }
    }
    Ok(())
}

/// Order of the root-set test at unexplored fraction `delta`: `ln(-ln delta)`.
pub(crate) fn root_order(delta: f64) -> Result<f64> {
    let ell = (-delta.ln()).ln();
    if ell.is_finite() && ell > 0.0 {
        Ok(ell)
    } else {
        Err(Error::Usage(format!("root-set order ln(-ln delta) is not positive at delta = {delta}")))
    }
}

/// Whether the still-unfinished vertices of a biased walk form a root set
/// of order `ln(-ln delta)` at each checkpoint.
pub fn cmd_rootset<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    writeln!(out, "{SCHEMA_HEADER}")?;
    writeln!(out, "n,d,trial,t,delta,ell,size,internal_edges,short_paths,verdict")?;
    let checkpoints = default_checkpoints(plan, &[0.01]);
    for (n, d) in cells(plan) {
        let m = n * d / 2;
        let ts: Vec<usize> = checkpoints.iter().map(|c| c.edges(m)).collect::<Result<_>>()?;
        let orders: Vec<f64> = ts.iter().map(|&t| root_order((m - t) as f64 / m as f64)).collect::<Result<_>>()?;
        let rows: Vec<Vec<String>> = (0..plan.trials)
            .into_par_iter()
            .map(|i| {
                let (g, connected) = trial_graph(plan, n, d, i)?;
                if !connected {
                    return Ok(vec![format!("# trial {i}: disconnected sample skipped")]);
                }
                let mut lines = Vec::new();
                for (&t, &ell) in ts.iter().zip(&orders) {
                    let mut rng = walk_rng(plan, n, d, i, WalkKind::BiasedEdgeProcess);
                    let opts = WalkOptions::decimated(m.max(1));
                    let traj = run_walk(&g, WalkKind::BiasedEdgeProcess, Start::Uniform, &mut rng, StopRule::Edges(t), opts)?;
                    let r = is_root_set(&g, &traj.unfinished_vertices(), ell);
                    let delta = (m - t) as f64 / m as f64;
                    lines.push(format!(
                        "{n},{d},{i},{t},{delta},{ell},{},{},{},{}",
                        r.size, r.internal_edges, r.short_path_count, r.verdict
                    ));
                }
                Ok(lines)
            })
            .collect::<Result<_>>()?;
        for line in rows.iter().flatten() {
            writeln!(out, "{line}")?;
        }
        for (j, &t) in ts.iter().enumerate() {
            let verdicts: Vec<bool> = rows
                .iter()
                .filter(|r| !r[0].starts_with('#'))
                .map(|r| r[j].ends_with("true"))
                .collect();
            let rate = verdicts.iter().filter(|&&v| v).count() as f64 / verdicts.len().max(1) as f64;
            writeln!(out, "# n={n} d={d} t={t} verdict_rate={rate}")?;
        }
    }
    Ok(())
}

/// Bridge-length law against the urn, or the urn against itself when
/// `synthetic` is set.
pub fn cmd_urntest<W: Write + ?Sized>(plan: &ExperimentPlan, out: &mut W) -> Result<()> {
    if plan.synthetic {
        let pairs = [(1, 3), (2, 2), (3, 5), (5, 10), (8, 4), (12, 30), (20, 15), (40, 60)];
        let (report, ks_p) = synthetic_null(&pairs, plan.trials.max(50), 10, plan.seed);
        writeln!(out, "{SCHEMA_HEADER}")?;
        write_urn_body(&report, out)?;
        writeln!(out, "# synthetic null: ks_p={ks_p} pass_fraction_0.01={}", report.pass_fraction(0.01))?;
        return Ok(());
    }
    let (n, d) = (plan.n[0], plan.d[0]);
    let delta = match plan.checkpoints.first() {
        None => 0.1,
        Some(Checkpoint::Delta(x)) => *x,
        Some(Checkpoint::Edges(t)) => {
            let m = (n * d / 2) as f64;
            (m - *t as f64) / m
        }
    };
    let cfg = UrnTestConfig {
        n,
        d,
        delta,
        trials: plan.trials,
        seed: plan.seed,
        ..UrnTestConfig::default()
    };
    let report = urn_bridge_test(&cfg)?;
    writeln!(out, "{SCHEMA_HEADER}")?;
    write_urn_body(&report, out)?;
    writeln!(
        out,
        "# n={n} d={d} delta={delta} observations={} skipped_trials={} pass_fraction_0.01={}",
        report.observations,
        report.skipped_trials,
        report.pass_fraction(0.01)
    )?;
    Ok(())
}

fn write_urn_body<W: Write + ?Sized>(report: &crate::structure::UrnTestReport, out: &mut W) -> Result<()> {
    let mut buf = Vec::new();
    report.write_csv(&mut buf)?;
    let text = String::from_utf8(buf).expect("csv is utf-8");
    for line in text.lines().filter(|l| *l != SCHEMA_HEADER) {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// A gnuplot script reading the CSV at `csv`, for commands with a natural plot.
pub fn plot_script(plan: &ExperimentPlan, csv: &Path) -> Option<String> {
    let file = csv.display();
    let head = format!("set datafile separator ','\nset key left top\nset grid\nfile = '{file}'\n");
    match plan.command {
        Command::Cover => {
            let mut s = head;
            s.push_str("set logscale x\nset xlabel 'n'\nset ylabel 'C_V(n) / (n ln n)'\nplot ");
            let parts: Vec<String> = plan
                .kinds
                .iter()
                .map(|k| {
                    format!(
                        "file using 1:((strcol(3) eq '{k}' && strcol(4) eq 'cv_nlogn') ? $6 : 1/0) with linespoints title '{k}'"
                    )
                })
                .collect();
            s.push_str(&parts.join(", \\\n     "));
            s.push('\n');
            Some(s)
        }
        Command::Trajectory => Some(format!(
            "{head}set xlabel 'delta'\nset ylabel 'X3'\n\
             plot file using 4:(strcol(5) eq 'X3' ? $7 : 1/0) with points title 'observed', \\\n     \
             file using 4:(strcol(5) eq 'X3' ? $11 : 1/0) with lines title 'n delta^(3/2)'\n"
        )),
        Command::Spectra => Some(format!(
            "{head}set xlabel 'sample'\nset ylabel 'lambda'\nplot file using 0:4 with points title 'lambda', 0.9428 with lines title '2 sqrt(2) / 3'\n"
        )),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(command: Command, pairs: &[(&str, &str)]) -> ExperimentPlan {
        ExperimentPlan::from_pairs(command, pairs).unwrap()
    }

    fn render(p: &ExperimentPlan) -> String {
        let mut buf = Vec::new();
        run_command(p, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn cover_is_byte_identical_across_runs_and_thread_counts() {
        let p = plan(Command::Cover, &[("n", "200"), ("d", "3"), ("trials", "4"), ("kind", "biased,simple,nb")]);
        let a = super::super::with_threads(Some(1), || render(&p)).unwrap();
        let b = super::super::with_threads(Some(4), || render(&p)).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(SCHEMA_HEADER));
        assert!(a.contains("200,3,nonbacktracking,cv_nlogn,4,"));
    }

    #[test]
    fn trajectory_at_delta_one_is_untouched() {
        let p = plan(Command::Trajectory, &[("n", "100"), ("trials", "3"), ("checkpoints", "1.0,0.5")]);
        let text = render(&p);
        let x3 = text.lines().find(|l| l.starts_with("100,3,0,1,X3,")).unwrap();
        assert!(x3.starts_with("100,3,0,1,X3,3,100,0,100,100,100,"), "{x3}");
    }

    #[test]
    fn sweep_rows_per_trial_and_kind() {
        let p = plan(Command::Sweep, &[("n", "50"), ("trials", "3"), ("kind", "biased,simple")]);
        let text = render(&p);
        assert_eq!(text.lines().count(), 2 + 6);
    }

    #[test]
    fn gen_round_trips() {
        let p = plan(Command::Gen, &[("n", "20"), ("d", "4"), ("trials", "1")]);
        let text = render(&p);
        let g = crate::multigraph::read_edge_list(text.as_bytes()).unwrap();
        assert_eq!((g.n(), g.num_edges()), (20, 40));
    }

    #[test]
    fn rootset_rejects_large_delta() {
        let p = plan(Command::RootSet, &[("n", "100"), ("trials", "1"), ("checkpoints", "0.5")]);
        let mut buf = Vec::new();
        assert!(matches!(run_command(&p, &mut buf), Err(Error::Usage(_))));
    }

    #[test]
    fn plot_scripts_exist_for_cover_and_trajectory() {
        let p = plan(Command::Cover, &[("kind", "biased,simple")]);
        let s = plot_script(&p, Path::new("out.csv")).unwrap();
        assert!(s.contains("'simple'") && s.contains("out.csv"));
        assert!(plot_script(&plan(Command::Gen, &[]), Path::new("x")).is_none());
    }
}
