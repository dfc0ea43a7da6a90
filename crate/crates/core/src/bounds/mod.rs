//! Dimension-bound certificates from block compositions.
//!
//! A composition `(n_1, ..., n_s)` of `n` selects the pairs of strictly upper
//! triangular matrices that vanish on every diagonal block. Counting free
//! coordinates against the commutator equations that survive gives a lower
//! bound on the dimension of that locus, which is compared against the
//! dimensions of the closures of regular pairs.

mod certificate;
mod composition;
mod search;
mod vmpq;

pub use certificate::{
    ambient_dim, classify, ct_equation_count, dim_ct0, dim_nt0, equation_count, nt_bound,
    nt_equation_count, BoundCertificate, Verdict,
};
pub use composition::{enumerate_compositions, Composition, Compositions, MAX_ENUMERATION_N};
pub use search::{
    search, search_with_top, RankedComposition, SearchReport, VerdictCounts, VerdictSummary,
    DEFAULT_TOP,
};
pub use vmpq::{stratum_dim, vmpq_report, VmpqComponent, VmpqReport};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {n} is outside the enumeration range 1..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("matrix sizes must be positive, got m={m}, p={p}, q={q}")]
    ZeroDimension { m: usize, p: usize, q: usize },
}
