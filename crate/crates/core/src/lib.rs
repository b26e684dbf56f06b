//! Vertex partitions of cographs into forests, independent sets and a bounded
//! number of deleted vertices.

pub mod bitset;
pub mod cotree;
pub mod dsl;
pub mod enumerate;
pub mod graph;
pub mod io;
pub mod obstructions;
pub mod oracle;
pub mod solver;
pub mod strength;

pub use cotree::{recognize, CanonicalCode, Cotree, NodeKind, P4Witness};
pub use graph::{Graph, GraphError};
pub use solver::{
    check_partition, extract_certificate, feasible_set, is_partitionable, Certificate, Label, SolveError, Triple,
    TripleSet,
};
pub use strength::{strength_profile, StrengthProfile};
