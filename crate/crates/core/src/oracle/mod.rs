//! Exact computations on tiny instances: pairing enumeration, exact
//! expected cover times, mean-field recurrences, exhaustive walk
//! enumeration and the exact urn law.

mod edge_process;
mod lazy_walks;
mod pairings;
mod recurrences;
mod urn_law;

pub use edge_process::{
    exact_edge_process, exact_edge_process_global, exact_edge_process_in, exact_edge_process_rational, rational,
    ExactCover, OracleField, MAX_GLOBAL_EDGES, MAX_ORACLE_EDGES, MAX_RATIONAL_EDGES,
};
pub use lazy_walks::{
    contracted_key, enumerate_lazy_walks, group_by_contraction, ContractedKey, EnumeratedWalk, WalkClass,
    MAX_WALK_POINTS,
};
pub use pairings::{double_factorial_odd, enumerate_pairings, MAX_ENUMERATED_POINTS};
pub use recurrences::{closed_x1, closed_x3, solve_recurrences, Denominator, RecurrenceTable};
pub use urn_law::urn_law_exact;

/// Exact `E[C_E(6)]` for the biased walk on K4 (any start).
pub const K4_EDGE_COVER: &str = "15/2";
