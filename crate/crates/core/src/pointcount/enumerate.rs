//! Budgeted odometer enumeration of `F_q^len`, split into contiguous chunks.
//!
//! Digit 0 is the most significant, so candidates are visited in
//! lexicographic order of the coordinate vector within each chunk.

use rayon::prelude::*;

use super::CountError;

/// Default cap on enumerated candidates.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const MIN_CHUNK: u128 = 1 << 14;

/// `q^len`, saturating at `u128::MAX`.
pub fn candidate_count(q: u64, len: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..len {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

pub(crate) fn check_budget(q: u64, len: usize, budget: u64) -> Result<u128, CountError> {
    let required = candidate_count(q, len);
    if required > budget as u128 {
        return Err(CountError::BudgetExceeded { required, budget });
    }
    Ok(required)
}

fn decode(mut index: u128, q: u64, digits: &mut [u32]) {
    for d in digits.iter_mut().rev() {
        *d = (index % q as u128) as u32;
        index /= q as u128;
    }
}

#[inline]
fn increment(q: u64, digits: &mut [u32]) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if u64::from(*d) < q {
            return;
        }
        *d = 0;
    }
}

/// Folds `visit` over every vector of `F_q^len` in parallel chunks.
pub(crate) fn par_fold<A, I, V, M>(
    q: u64,
    len: usize,
    budget: u64,
    init: I,
    visit: V,
    merge: M,
) -> Result<A, CountError>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[u32]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let total = check_budget(q, len, budget)?;
    let workers = rayon::current_num_threads() as u128 * 8;
    let chunk = (total / workers).max(MIN_CHUNK);
    let chunks = total.div_ceil(chunk) as u64;
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c as u128 * chunk;
            let end = (start + chunk).min(total);
            let mut acc = init();
            let mut digits = vec![0u32; len];
            decode(start, q, &mut digits);
            for _ in start..end {
                visit(&mut acc, &digits);
                increment(q, &mut digits);
            }
            acc
        })
        .reduce(&init, &merge))
}

/// Number of vectors in `F_q^len` satisfying `pred`.
pub(crate) fn par_count<P>(q: u64, len: usize, budget: u64, pred: P) -> Result<u128, CountError>
where
    P: Fn(&[u32]) -> bool + Sync + Send,
{
    par_fold(
        q,
        len,
        budget,
        || 0u128,
        |acc, d| {
            if pred(d) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )
}
