//! Parameter schedule, the main lemma's recursion and the top-level
//! partition.

mod lemma;
mod schedule;
mod state;
mod theorem;

pub use lemma::{
    main_lemma_on, main_lemma_partition, LemmaConfig, LemmaOutcome, LemmaPartition, StallPolicy, StepRecord,
};
pub use schedule::{compute_schedule, DeltaModel, Mode, ParamSchedule, PARAM_CAP};
pub use state::{verify_lemma_state, verify_with, Check, Claim, LemmaReport, LemmaState, Pair};
pub use theorem::{m_bound, partition_into_restricted, theorem_params, Outcome, PartitionReport, TheoremParams};
