use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use covertime_lab::harness::{cmd_validate, parse_config, run_to_destination, with_threads, Command, ExperimentPlan, ValidateOptions};
use covertime_lab::Error;

#[derive(Parser)]
#[command(name = "covertime-lab", version, about = "Cover-time experiments on random regular multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample configuration multigraphs as edge lists
    Gen(Flags),
    /// Aggregated cover times per (n, d, kind)
    Cover(Flags),
    /// X_i and Phi at checkpoints against closed forms
    Trajectory(Flags),
    /// Second transition eigenvalue of sampled graphs
    Spectra(Flags),
    /// Root-set test on the unfinished vertices of biased walks
    Rootset(Flags),
    /// Bridge lengths against the urn law
    #[command(name = "urn-test")]
    UrnTest(Flags),
    /// Run every acceptance criterion
    Validate(Flags),
    /// Per-trial cover times
    Sweep(Flags),
}

#[derive(Args)]
struct Flags {
    /// key = value file; flags override it
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// biased, simple, nb (comma separated)
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// delta values (0.1) or edge counts (t:500), comma separated
    #[arg(long)]
    checkpoints: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    threads: Option<String>,
    #[arg(long)]
    quick: bool,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    resample_disconnected: Option<String>,
    #[arg(long)]
    decimation: Option<String>,
    #[arg(long)]
    emit_plot_script: bool,
    /// urn-test: calibrate on urn draws
    #[arg(long)]
    synthetic: bool,
    /// validate: only these criterion ids
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<u32>>,
}

impl Flags {
    fn pairs(&self) -> Result<Vec<(String, String)>, Error> {
        let mut pairs = match &self.config {
            Some(p) => parse_config(&std::fs::read_to_string(p)?)?,
            None => Vec::new(),
        };
        let given = [
            ("n", &self.n),
            ("d", &self.d),
            ("kind", &self.kind),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("checkpoints", &self.checkpoints),
            ("out", &self.out),
            ("threads", &self.threads),
            ("resample-disconnected", &self.resample_disconnected),
            ("decimation", &self.decimation),
        ];
        for (k, v) in given {
            if let Some(v) = v {
                pairs.push((k.to_string(), v.clone()));
            }
        }
        for (k, on) in [("quick", self.quick), ("emit-plot-script", self.emit_plot_script), ("synthetic", self.synthetic)] {
            if on {
                pairs.push((k.to_string(), "true".into()));
            }
        }
        Ok(pairs)
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let (command, flags) = match cli.command {
        Cmd::Gen(f) => (Command::Gen, f),
        Cmd::Cover(f) => (Command::Cover, f),
        Cmd::Trajectory(f) => (Command::Trajectory, f),
        Cmd::Spectra(f) => (Command::Spectra, f),
        Cmd::Rootset(f) => (Command::RootSet, f),
        Cmd::UrnTest(f) => (Command::UrnTest, f),
        Cmd::Validate(f) => (Command::Validate, f),
        Cmd::Sweep(f) => (Command::Sweep, f),
    };
    let plan = ExperimentPlan::from_pairs(command, &flags.pairs()?)?;
    if command == Command::Validate {
        let mut opts = ValidateOptions {
            quick: plan.quick,
            only: flags.only.clone(),
            ..ValidateOptions::default()
        };
        if flags.seed.is_some() {
            opts.seed = plan.seed;
        }
        let summary = with_threads(plan.threads, || cmd_validate(&opts, &mut std::io::stdout().lock()))??;
        return Ok(summary.passed());
    }
    with_threads(plan.threads, || run_to_destination(&plan))??;
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("covertime-lab: {e}");
            match e {
                Error::Usage(_) | Error::InvalidParameters(_) | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
