//! Monte Carlo laboratory for the unvisited-edge ("biased") random walk on
//! configuration-model random regular multigraphs.
//!
//! The crate is organized around the experiment pipeline:
//!
//! - [`multigraph`]: pairing sampler, half-edge multigraphs, structural diagnostics.
//! - [`walkers`]: the biased walk (eager and lazily exposed), simple and
//!   non-backtracking baselines, trajectories and cover times.
//! - [`spectral`]: second eigenvalue, contraction, return probabilities and
//!   three independent hitting-time routes.
//! - [`structure`]: green bridges, root sets, the Pólya urn and its
//!   goodness-of-fit test.
//! - [`oracle`]: exact computations on tiny instances.
//! - [`harness`]: experiment plans, deterministic parallel execution, CSV
//!   output and the validation suite.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod error;
pub mod harness;
pub mod multigraph;
pub mod oracle;
pub mod seeding;
pub mod spectral;
pub mod stats;
pub mod structure;
pub mod walkers;

pub use error::{Error, Result};
pub use multigraph::{realize, sample_graph, sample_pairing, DisconnectedMode, Multigraph, Pairing};
pub use walkers::{StopRule, Trajectory, WalkKind};
