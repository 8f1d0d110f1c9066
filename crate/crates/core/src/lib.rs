//! Spanning subdivisions of `K_{2,l}` (Hamilton paths and cycles included) in
//! graphs with a known bandwidth labelling.
//!
//! - [`graph`]: labelled graphs, bandwidth witnesses, degree conditions.
//! - [`builder`]: the greedy path-growing construction and its assembly.
//! - [`oracle`]: exact brute-force checks used to validate the builder.
//! - [`constructions`]: powers of paths and cycles, the extremal graph,
//!   condition-preserving random subgraphs.
//! - [`rgg`]: one-dimensional random geometric graphs.
//! - [`format`]: text formats shared with the command-line tool.

pub mod builder;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod rgg;

pub use builder::{
    assemble, build_subdivision, hamilton_cycle, hamilton_path, replay_trace, run_algorithm,
    OrientedPath, PathSystem, RootedSubdivision, Step, StepAction,
};
pub use error::{Error, Result};
pub use graph::{
    bandwidth_witness_ok, check_conjecture_floor, check_theorem_condition, effective_min_degree,
    ConditionName, ConditionReport, ConjectureFloor, LabeledGraph, Params, TheoremCondition,
    Violation,
};
pub use oracle::{verify_subdivision, Certificate, OracleConfig, SubdivisionInvariant};
