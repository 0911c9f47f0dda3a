//! Degree-sum conditions for spanning cycles and few-leaf spanning trees,
//! restricted to nonadjacent pairs that appear inside small induced
//! patterns — with constructive search that backs every verdict.
//!
//! Classical Ore-style checkers impose `d(x) + d(y) >= threshold` on every
//! nonadjacent pair. The checkers here impose it only on *constrained*
//! pairs: nonadjacent pairs occurring together inside an induced occurrence
//! of one of five 4-vertex patterns (K_{1,2} ∪ K_1, K_3 ∪ K_1, K_{1,3},
//! K_{1,3}+e, P_4). The weaker hypothesis still guarantees a spanning
//! cycle (threshold n, order >= 4, some vertex of degree >= 2) or a
//! spanning tree with at most k leaves (threshold n − k + 1, connected),
//! and the [`construct`] engine realizes the guarantee: it either builds
//! the object or returns a machine-checkable witness that the hypothesis
//! fails.
//!
//! Module map:
//! - [`graph`]: bitset adjacency, subsets, induced subgraphs, components.
//! - [`patterns`]: the pattern catalog, classification, constrained pairs.
//! - [`conditions`]: condition checkers (restricted, Dirac, Ore variants).
//! - [`construct`]: rotation-extension engine, certificates, witnesses.
//! - [`oracle`]: exhaustive small-graph ground truth.
//! - [`codec`]: graph6 and edge-list serialization.
//! - [`enumerate`]: labeled-graph streams and canonical forms.
//! - [`survey`]: batch cross-validation of all of the above.

pub mod codec;
pub mod conditions;
pub mod construct;
pub mod enumerate;
pub mod graph;
pub mod oracle;
pub mod patterns;
pub mod survey;

pub use conditions::{check_classical, check_hamilton_condition, check_tree_condition, Classical, ConditionReport};
pub use construct::{build_k_ended_tree, find_hamilton_cycle, CycleOutcome, TreeOutcome};
pub use graph::Graph;
pub use patterns::{PatternFamily, PatternId};
