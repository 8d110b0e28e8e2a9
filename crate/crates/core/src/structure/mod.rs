//! Combinatorial structure of biased walks: green bridges, root sets and the
//! Pólya urn law of bridge lengths.

mod green;
mod rootset;
mod urn;

pub use green::{extract_green, GreenStructure};
pub use rootset::{is_root_set, RootSetReport};
pub use urn::{
    bucket_test, capped_first_bridge_pmf, equivalence_class_size, first_bridge_pmf, observe_walk, polya_urn,
    synthetic_null, urn_bridge_test, BucketResult, UrnObservation, UrnTestConfig, UrnTestReport,
};
