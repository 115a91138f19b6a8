//! Data reduction for Dominating Set.
//!
//! The crate implements two local reduction rules that shrink an instance
//! while preserving its domination number: rule 1 inspects the
//! neighborhood of a single vertex, rule 2 the joint neighborhood of a
//! vertex pair. On planar inputs the fixpoint kernel has size linear in
//! the domination number. An annotated black-and-white variant records
//! forced vertices directly and enables three extra cleanup rules for
//! white vertices.
//!
//! Around the rules: exact solvers (an exhaustive oracle and a
//! kernelize-then-branch search), and a seeded generator for random
//! planar instances.

pub mod graph;
pub mod partition;
pub mod plangen;
pub mod reduction;
pub mod solver;

pub use graph::{Color, Graph, GraphError, Origin, VertexId};
pub use partition::{partition_pair, partition_single, TriPartition};
pub use plangen::{paper_sample_sets, random_planar, GenSpec};
pub use reduction::{
    is_reduced, reduce, reduce_with, try_rule1, try_rule2, try_white_rules, Mode, ModeKind,
    ReduceOptions, ReductionResult, ReductionStats, RuleCounts, RuleEvent, RuleKind, SweepScope,
    VisitOrder,
};
pub use solver::{branch_and_reduce, brute_force_gamma, verify_certificate, SolveResult};
