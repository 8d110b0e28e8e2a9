//! Builds an experiment from a config text plus overrides and writes the
//! aggregated CSV, the same path the command-line tool takes.

use covertime_lab::harness::{parse_config, run_command, Command, ExperimentPlan};

const CONFIG: &str = "
# small cover sweep
n = 1000, 4000
d = 3
kind = biased, simple, nb
trials = 8
seed = 12
";

fn main() -> covertime_lab::Result<()> {
    let mut pairs = parse_config(CONFIG)?;
    pairs.push(("trials".into(), "4".into()));
    let plan = ExperimentPlan::from_pairs(Command::Cover, &pairs)?;
    run_command(&plan, &mut std::io::stdout().lock())
}
