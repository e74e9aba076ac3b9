//! Graph representation and exact checkers for the density notions.

mod combinatorics;
mod fullness;
mod graph;
mod induced;
mod predicates;
mod vertex_set;

pub use combinatorics::{binomial, Combinations};
pub use fullness::{
    check_fullness, exact_feasible, is_full_pair_exact, qualifying_size, refute_fullness_sampled,
    FullnessConfig, FullnessStatus,
};
pub use graph::{Graph, GraphBuilder, Induced, Side, DENSE_LIMIT};
pub use induced::{find_induced_copy, verify_induced_copy};
pub use predicates::{
    budget, ceil_tol, edges_between, edges_between_side, edges_within, is_restricted,
    is_restricted_on, is_sparse_to, is_weakly_restricted, max_degree_into, max_degree_into_side,
    max_degree_within, restricted_side, sparse_side, weakly_restricted_side, within,
};
pub(crate) use predicates::ensure_disjoint;
pub use vertex_set::VertexSet;
