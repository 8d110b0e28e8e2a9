//! Experiment orchestration: plans, deterministic parallel trials, CSV output
//! and the acceptance criteria shared by `validate` and the test suite.
//!
//! A plan is built from flat `key = value` pairs. Config-file pairs come
//! first and command-line pairs after, so later pairs win.

mod commands;
mod criteria;
mod plan;
mod rows;

pub use commands::{cmd_cover, cmd_gen, cmd_rootset, cmd_spectra, cmd_sweep, cmd_trajectory, cmd_urntest, plot_script, run_command, run_to_destination};
pub use criteria::{cmd_validate, criteria, run_criterion, Criterion, CriterionReport, ValidateOptions, ValidationSummary};
pub use plan::{parse_config, Checkpoint, Command, ExperimentPlan, PLAN_KEYS};
pub use rows::{Aggregator, ResultRow, SCHEMA_HEADER};

use crate::error::{Error, Result};

/// Runs `f` on a pool with `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Usage("threads must be at least 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}
