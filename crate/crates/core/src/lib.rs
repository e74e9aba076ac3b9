//! Partitions of H-free graphs into ε-restricted sets.
//!
//! A set `X` is ε-restricted when `G[X]` or its complement has maximum
//! degree at most `ε|X|`. For every fixed `H` and ε, an `H`-free graph can be
//! split into a bounded number of such sets. This crate implements that
//! construction end to end, with every intermediate object checkable:
//!
//! * [`graphcore`]: graphs, vertex sets and exact predicate checkers.
//! * [`oracles`]: searches standing in for existence theorems (restricted
//!   subsets, extraction, weak partitions, full pairs).
//! * [`embedding`]: greedy transversal embedding of `H` into block systems.
//! * [`covering`]: the randomized covering-set sampler.
//! * [`partitions`]: path- and tree-partitions and their covers.
//! * [`driver`]: the parameter schedule, the main-lemma recursion and the
//!   top-level partition-or-induced-copy dichotomy.
//! * [`cli`]: file formats and the command surface used by the binary.
//!
//! Every returned certificate is re-verified by [`graphcore`] predicates.

pub mod cli;
pub mod covering;
pub mod driver;
pub mod embedding;
mod error;
pub mod generators;
pub mod graphcore;
pub mod oracles;
pub mod partitions;
pub mod rng;

pub use error::{Error, Result};
pub use graphcore::{Graph, GraphBuilder, Side, VertexSet};
