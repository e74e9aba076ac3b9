//! Restricted-set certificates, path-partitions and tree-partitions.

mod certificate;
pub mod gen;
mod path;
mod tree;

pub use certificate::{PartitionCertificate, Violation};
pub use path::{
    cover_path, cover_path_with_cap, path_bound, validate_path_partition, PathBranch, PathCover, PathPartition, PathViolation,
};
pub use tree::{
    cover_small_tree, cover_tight_tree, cover_tight_tree_with_cap, cover_tree, cover_tree_with_cap, graft, is_tight, round_robin, validate_tree_partition,
    RootedTree, SmallTreeCover, SmallTreeOutcome, TreeCover, TreePartition, TreeViolation,
};
