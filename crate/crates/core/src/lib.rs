//! Rational-swap dynamics for indivisible objects on a network.
//!
//! Agents each own one object; objects are vertices of an undirected graph;
//! two agents may swap exactly when their objects are adjacent and both
//! strictly prefer what they receive. This crate answers, for a given
//! instance:
//!
//! * whether a given agent can ever hold a given object (object queries),
//! * whether a given perfect matching is reachable (matching queries),
//! * and how to reach a Pareto-efficient matching.
//!
//! Fast solvers exist where the network structure permits: paths ([`path`]),
//! stars ([`star`]), generalized stars for efficiency queries ([`genstar`]),
//! and trees for matching queries ([`tree`]). Everything else falls back to
//! the explicit reachable-set search in [`oracle`], which is also the
//! ground truth the fast solvers are tested against. [`reductions`] carries
//! the hardness constructions tying object queries on cliques and
//! generalized stars to restricted SAT, plus the query-to-matching
//! reduction.

pub mod classify;
pub mod cnf;
pub mod gen;
pub mod genstar;
pub mod instance;
pub mod oracle;
pub mod path;
pub mod reductions;
pub mod star;
pub mod tree;

pub use classify::{classify_graph, GraphClass};
pub use instance::{
    apply_swap, pareto_dominates, potential, swap_applicable, validate_sequence, Agent, Edge,
    Instance, InstanceError, Matching, Object, SwapSequence,
};
pub use oracle::{
    enumerate_reachable, enumerate_reachable_from, oracle_decide, oracle_pareto_front,
    OracleAnswer, OracleError, OracleQuery, ReachSet, DEFAULT_STATE_LIMIT,
};
