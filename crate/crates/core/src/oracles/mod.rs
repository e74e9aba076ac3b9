//! Searches standing in for existence results: large restricted subsets,
//! iterated extraction, weak partitions and full sub-pairs.

mod extraction;
mod full_pair;
mod restricted;
mod weak;

pub use extraction::{extract_until, extraction_partition, n_gamma, ExtractionResult};
pub use full_pair::{find_full_pair, FullPair, PairMode, PairRequest, EXHAUSTIVE_LIMIT};
pub use restricted::{find_restricted_subset, SearchMode, EXACT_LIMIT};
pub use weak::{find_weak_subset, weak_partition, WeakPartition};
