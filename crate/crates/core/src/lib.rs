//! Continuation of partially defined metrics.
//!
//! A weighted graph assigns distances to some vertex pairs. This crate decides
//! whether those distances extend to a pseudometric or metric on all
//! vertices, computes the greatest extension (the shortest-path
//! pseudometric), decides whether that extension is the only one, and builds
//! a second extension when it is not. All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod extensions;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod metrizability;
pub mod report;
pub mod shortest_path;
pub mod uniqueness;
pub mod weight;

pub use error::{Error, Result};
pub use extensions::{
    compare_extensions, greatest_extension, sample_extensions, verify_extension, witness_alternative,
    ExtensionComparison, Relation, SampledExtension, Verification, Violation, WitnessExtension,
};
pub use graph::{Cycle, Edge, GraphBuilder, Path, VertexId, WeightedGraph, DEFAULT_ENUMERATION_CAP};
pub use metrizability::{check_cycle_condition, check_edge_consistency, classify, MetrizabilityVerdict};
pub use shortest_path::{shortest_path_between, shortest_path_metric, DistanceMatrix, Provenance};
pub use uniqueness::{
    decide_uniqueness, defect_supremum, path_defect, per_edge_defect_upper_bound, DefectAnalyzer, DefectReport, Mode,
    UniquenessVerdict,
};
pub use weight::{parse_rational, Rational, Weight};
