use serde::{Deserialize, Serialize};

use super::composition::Composition;

/// Dimension of the closure of regular pairs in the upper triangular
/// commuting variety: `n(n+3)/2`.
pub fn dim_ct0(n: usize) -> u64 {
    let n = n as u64;
    n * (n + 3) / 2
}

/// Same for strictly upper triangular pairs: `n(n+1)/2 - 1` (zero for `n = 0`).
pub fn dim_nt0(n: usize) -> u64 {
    let n = n as u64;
    (n * (n + 1) / 2).saturating_sub(1)
}

/// Scalar equations `[X,Y] = 0` imposes on upper triangular pairs: `n(n-1)/2`.
pub fn ct_equation_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Scalar equations on strictly upper triangular pairs: `(n-1)(n-2)/2`.
pub fn nt_equation_count(n: usize) -> u64 {
    let n = n as u64;
    n.saturating_sub(1) * n.saturating_sub(2) / 2
}

/// Scalar equations of the block system: one per entry of each block `(h, k)`
/// with at least one block strictly between, i.e. `sum_{k-h>=2} n_h n_k`.
pub fn equation_count(j: &Composition) -> u64 {
    let b = j.blocks();
    let mut total = 0;
    for h in 0..b.len() {
        for k in h + 2..b.len() {
            total += (b[h] * b[k]) as u64;
        }
    }
    total
}

/// Free coordinates of a block-strictly-upper pair: `2 sum_{h<k} n_h n_k`.
pub fn ambient_dim(j: &Composition) -> u64 {
    2 * off_block_pairs(j.blocks())
}

/// `sum_{h<k} n_h n_k`, from `(n^2 - sum n_h^2) / 2`.
fn off_block_pairs(blocks: &[usize]) -> u64 {
    let n: u64 = blocks.iter().map(|&b| b as u64).sum();
    let squares: u64 = blocks.iter().map(|&b| (b * b) as u64).sum();
    (n * n - squares) / 2
}

fn adjacent_pairs(blocks: &[usize]) -> u64 {
    blocks.windows(2).map(|w| (w[0] * w[1]) as u64).sum()
}

/// Lower bound on the dimension of the block variety: ambient dimension minus
/// equation count, evaluated in closed form as
/// `sum_{h<k} n_h n_k + sum_h n_h n_{h+1}`.
pub fn nt_bound(j: &Composition) -> u64 {
    nt_bound_of_blocks(j.blocks())
}

#[inline]
pub(crate) fn nt_bound_of_blocks(blocks: &[usize]) -> u64 {
    off_block_pairs(blocks) + adjacent_pairs(blocks)
}

/// What a bound certifies about the commuting variety of size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    None,
    Reducible,
    NotCompleteIntersection,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::None => "none",
            Verdict::Reducible => "reducible",
            Verdict::NotCompleteIntersection => "not_complete_intersection",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub composition: Composition,
    pub n: usize,
    pub equation_count: u64,
    pub ambient_dim: u64,
    pub nt_bound: u64,
    pub ct_orbit_bound: u64,
    pub dim_ct0: u64,
    pub dim_nt0: u64,
    pub verdict_ct: Verdict,
    pub verdict_nt: Verdict,
}

impl BoundCertificate {
    /// The uncorrected comparison `nt_bound > dim CT0` (no scalar orbit).
    pub fn exceeds_ct0_directly(&self) -> bool {
        self.nt_bound > self.dim_ct0
    }

    pub fn exceeds_ct0_with_orbit(&self) -> bool {
        self.ct_orbit_bound > self.dim_ct0
    }
}

/// Verdicts for a bound `nt_bound` on a composition of `n` into `s` blocks.
///
/// Non-complete-intersection needs a component strictly above the minimum
/// component dimension. Reducibility needs one at least as large that cannot
/// contain regular pairs, which holds when `s < n`: every pair in the block
/// variety has minimal polynomial degree at most `s`.
pub(crate) fn verdicts(n: usize, s: usize, nt_bound: u64) -> (Verdict, Verdict) {
    let ct0 = dim_ct0(n);
    let nt0 = dim_nt0(n);
    let orbit = nt_bound + 2;
    let non_regular = s < n;

    let ct = if orbit > ct0 || nt_bound > ct0 {
        Verdict::NotCompleteIntersection
    } else if non_regular && orbit >= ct0 {
        Verdict::Reducible
    } else {
        Verdict::None
    };
    let nt = if nt_bound > nt0 {
        Verdict::NotCompleteIntersection
    } else if non_regular && nt_bound >= nt0 {
        Verdict::Reducible
    } else {
        Verdict::None
    };
    (ct, nt)
}

pub fn classify(j: &Composition) -> BoundCertificate {
    let n = j.n();
    let equation_count = equation_count(j);
    let ambient_dim = ambient_dim(j);
    let nt_bound = nt_bound(j);
    debug_assert_eq!(nt_bound, ambient_dim - equation_count);
    let (verdict_ct, verdict_nt) = verdicts(n, j.len(), nt_bound);
    BoundCertificate {
        composition: j.clone(),
        n,
        equation_count,
        ambient_dim,
        nt_bound,
        ct_orbit_bound: nt_bound + 2,
        dim_ct0: dim_ct0(n),
        dim_nt0: dim_nt0(n),
        verdict_ct,
        verdict_nt,
    }
}
