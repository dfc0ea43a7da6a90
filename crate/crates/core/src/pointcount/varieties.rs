use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bounds::Composition;
use crate::exactalg::{rank_of_rows, Modulus};

use super::enumerate::{check_budget, par_count, par_fold};
use super::system::CommutingSystem;
use super::CountError;

/// Which variety a table of counts belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietyId {
    /// Commuting strictly upper triangular pairs.
    Nt { n: usize },
    /// Commuting upper triangular pairs.
    Ct { n: usize },
    /// Strictly upper pairs vanishing on the diagonal blocks of a composition.
    NtBlock { composition: Composition },
    /// `AB = 0` with optional rank caps.
    Vmpq {
        m: usize,
        p: usize,
        q: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        rank_cap_a: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        rank_cap_b: Option<usize>,
    },
}

impl VarietyId {
    /// Number of affine coordinates of the ambient space.
    pub fn ambient_coordinates(&self) -> usize {
        match self {
            VarietyId::Nt { n } => n * n.saturating_sub(1),
            VarietyId::Ct { n } => n * (n + 1),
            VarietyId::NtBlock { composition } => CommutingSystem::block(composition).coordinate_count(),
            VarietyId::Vmpq { m, p, q, .. } => m * p + p * q,
        }
    }

    /// Exact point count over `F_q`.
    pub fn count(&self, q: Modulus, budget: u64) -> Result<u128, CountError> {
        match self {
            VarietyId::Nt { n } => count_nt(*n, q, budget),
            VarietyId::Ct { n } => count_ct(*n, q, budget),
            VarietyId::NtBlock { composition } => count_nt_composition(composition, q, budget),
            VarietyId::Vmpq {
                m,
                p,
                q: cols,
                rank_cap_a,
                rank_cap_b,
            } => count_vmpq(*m, *p, *cols, q, *rank_cap_a, *rank_cap_b, budget),
        }
    }
}

/// Exact counts of one variety over several primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCountTable {
    pub variety: VarietyId,
    pub counts: BTreeMap<u64, u128>,
    /// Ambient coordinate count; every count is at most `q^free_coordinate_count`.
    pub free_coordinate_count: usize,
}

impl Serialize for PointCountTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a BTreeMap<u64, u128>);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (q, c) in self.0 {
                    m.serialize_entry(&q.to_string(), &c.to_string())?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("variety", &self.variety)?;
        m.serialize_entry("counts", &Counts(&self.counts))?;
        m.serialize_entry("free", &self.free_coordinate_count)?;
        m.end()
    }
}

/// Counts `variety` over each prime in `primes`. The budget is checked for
/// every prime before anything is enumerated.
pub fn count_table(
    variety: VarietyId,
    primes: &[Modulus],
    budget: u64,
) -> Result<PointCountTable, CountError> {
    // fail before any enumeration if one of the primes is out of budget
    for &q in primes {
        let required = required_candidates(&variety, q);
        if required > u128::from(budget) {
            return Err(CountError::BudgetExceeded { required, budget });
        }
    }
    let mut counts = BTreeMap::new();
    for &q in primes {
        counts.insert(q.get(), variety.count(q, budget)?);
    }
    Ok(PointCountTable {
        free_coordinate_count: variety.ambient_coordinates(),
        variety,
        counts,
    })
}

/// Commuting pairs of strictly upper triangular `n x n` matrices over `F_q`.
///
/// `x_{1,n}` and `y_{1,n}` occur in no equation and are factored out.
pub fn count_nt(n: usize, q: Modulus, budget: u64) -> Result<u128, CountError> {
    CommutingSystem::strictly_upper(n).count(q, budget, true)
}

/// Commuting pairs of upper triangular matrices over `F_q`.
pub fn count_ct(n: usize, q: Modulus, budget: u64) -> Result<u128, CountError> {
    CommutingSystem::upper(n).count(q, budget, true)
}

/// Points of the block variety of a composition over `F_q`.
pub fn count_nt_composition(j: &Composition, q: Modulus, budget: u64) -> Result<u128, CountError> {
    CommutingSystem::block(j).count(q, budget, true)
}

/// Splits a candidate into `A` (`m x p`) and `B` (`p x q`) and tests `AB = 0`.
fn product_vanishes(md: u64, m: usize, p: usize, q: usize, coords: &[u32]) -> bool {
    let (a, b) = coords.split_at(m * p);
    (0..m).all(|i| {
        (0..q).all(|j| {
            let s: u64 = (0..p)
                .map(|k| u64::from(a[i * p + k]) * u64::from(b[k * q + j]))
                .sum();
            s % md == 0
        })
    })
}

fn ranks(md: Modulus, m: usize, p: usize, q: usize, coords: &[u32]) -> (usize, usize) {
    let (a, b) = coords.split_at(m * p);
    let a: Vec<u64> = a.iter().map(|&v| u64::from(v)).collect();
    let b: Vec<u64> = b.iter().map(|&v| u64::from(v)).collect();
    (rank_of_rows(md, &a, m, p), rank_of_rows(md, &b, p, q))
}

/// Pairs `(A, B)` in `M(m,p) x M(p,q)` over `F_field` with `AB = 0`, optionally
/// with `rank A <= rank_cap_a` and `rank B <= rank_cap_b`.
pub fn count_vmpq(
    m: usize,
    p: usize,
    q: usize,
    field: Modulus,
    rank_cap_a: Option<usize>,
    rank_cap_b: Option<usize>,
    budget: u64,
) -> Result<u128, CountError> {
    let md = field.get();
    par_count(md, m * p + p * q, budget, |c| {
        if !product_vanishes(md, m, p, q, c) {
            return false;
        }
        if rank_cap_a.is_none() && rank_cap_b.is_none() {
            return true;
        }
        let (ra, rb) = ranks(field, m, p, q, c);
        rank_cap_a.map_or(true, |cap| ra <= cap) && rank_cap_b.map_or(true, |cap| rb <= cap)
    })
}

/// Points of `{AB = 0}` split by exact `(rank A, rank B)`.
pub fn count_vmpq_strata(
    m: usize,
    p: usize,
    q: usize,
    field: Modulus,
    budget: u64,
) -> Result<BTreeMap<(usize, usize), u128>, CountError> {
    let md = field.get();
    let width = p.min(q) + 1;
    let cells = par_fold(
        md,
        m * p + p * q,
        budget,
        || vec![0u128; (m.min(p) + 1) * width],
        |acc, c| {
            if product_vanishes(md, m, p, q, c) {
                let (ra, rb) = ranks(field, m, p, q, c);
                acc[ra * width + rb] += 1;
            }
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )?;
    Ok(cells
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| ((i / width, i % width), c))
        .collect())
}

/// Budget check for a variety without running the count.
pub fn required_candidates(variety: &VarietyId, q: Modulus) -> u128 {
    let len = match variety {
        VarietyId::Nt { n } => CommutingSystem::strictly_upper(*n).factored().0.coordinate_count(),
        VarietyId::Ct { n } => CommutingSystem::upper(*n).factored().0.coordinate_count(),
        VarietyId::NtBlock { composition } => {
            CommutingSystem::block(composition).factored().0.coordinate_count()
        }
        VarietyId::Vmpq { m, p, q, .. } => m * p + p * q,
    };
    match check_budget(q.get(), len, u64::MAX) {
        Ok(r) => r,
        Err(CountError::BudgetExceeded { required, .. }) => required,
        Err(_) => unreachable!(),
    }
}
