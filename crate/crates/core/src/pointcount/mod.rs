//! Exact point counts of the commuting varieties over small prime fields.
//!
//! Every count enumerates candidates up to a budget and fails with the
//! required candidate count instead of truncating. Counts are `u128`.

mod enumerate;
mod estimate;
mod system;
mod varieties;
mod verify;

pub use enumerate::{candidate_count, DEFAULT_BUDGET};
pub use estimate::{estimate_dimension, DimensionEstimate, SlopeSample};
pub use system::CommutingSystem;
pub use varieties::{
    count_ct, count_nt, count_nt_composition, count_table, count_vmpq, count_vmpq_strata,
    required_candidates, PointCountTable, VarietyId,
};
pub use verify::{
    anti_transpose, verify_example_a, verify_involution, ExampleAReport, InvolutionReport,
    SamplingMode,
};

pub(crate) use enumerate::par_fold;

use serde::Serializer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("enumeration needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("dimension estimate needs at least 2 primes, got {0}")]
    TooFewPrimes(usize),
    #[error("zero point count over F_{0}")]
    ZeroCount(u64),
}

/// Serializes a count as a decimal string.
pub(crate) fn as_decimal<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
