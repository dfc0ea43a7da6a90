//! Commutator equations restricted to a support pattern.
//!
//! Both matrices of a pair are supported on the same set of positions. Each
//! entry `(a, b)` of `[X, Y]` is the sum over `k` of
//! `x_{a,k} y_{k,b} - y_{a,k} x_{k,b}`, taken over the `k` for which both
//! positions are in the support.

use crate::bounds::Composition;
use crate::exactalg::{FieldMatrix, Modulus};

use super::enumerate::{candidate_count, par_count};
use super::CountError;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Equation {
    entry: (usize, usize),
    /// Pairs of coordinate slots `(slot of (a,k), slot of (k,b))`.
    terms: Vec<(usize, usize)>,
}

/// Candidate vectors lay out all X coordinates (row-major positions) followed
/// by all Y coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingSystem {
    n: usize,
    positions: Vec<(usize, usize)>,
    equations: Vec<Equation>,
}

impl CommutingSystem {
    pub fn from_support(n: usize, allowed: impl Fn(usize, usize) -> bool) -> Self {
        let mut slot = vec![None; n * n];
        let mut positions = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if allowed(i, j) {
                    slot[i * n + j] = Some(positions.len());
                    positions.push((i, j));
                }
            }
        }
        let mut equations = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let terms: Vec<_> = (0..n)
                    .filter(|&k| !(a == k && k == b))
                    .filter_map(|k| Some((slot[a * n + k]?, slot[k * n + b]?)))
                    .collect();
                if !terms.is_empty() {
                    equations.push(Equation {
                        entry: (a, b),
                        terms,
                    });
                }
            }
        }
        Self {
            n,
            positions,
            equations,
        }
    }

    /// Pairs of strictly upper triangular matrices.
    pub fn strictly_upper(n: usize) -> Self {
        Self::from_support(n, |i, j| i < j)
    }

    /// Pairs of upper triangular matrices.
    pub fn upper(n: usize) -> Self {
        Self::from_support(n, |i, j| i <= j)
    }

    /// Strictly upper pairs vanishing on every diagonal block of `j`.
    pub fn block(j: &Composition) -> Self {
        let block = j.block_of_positions();
        Self::from_support(j.n(), |a, b| block[a] < block[b])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    /// Coordinates of a candidate pair: two per position.
    pub fn coordinate_count(&self) -> usize {
        2 * self.positions.len()
    }

    pub fn equation_count(&self) -> usize {
        self.equations.len()
    }

    /// Matrix entries `(a, b)` carrying a non-trivial equation.
    pub fn equation_entries(&self) -> Vec<(usize, usize)> {
        self.equations.iter().map(|e| e.entry).collect()
    }

    /// Positions that no equation mentions; their coordinates are free.
    pub fn unused_positions(&self) -> Vec<(usize, usize)> {
        let mut used = vec![false; self.positions.len()];
        for e in &self.equations {
            for &(s, t) in &e.terms {
                used[s] = true;
                used[t] = true;
            }
        }
        self.positions
            .iter()
            .zip(used)
            .filter(|(_, u)| !u)
            .map(|(&p, _)| p)
            .collect()
    }

    /// The same system without its unused positions, and how many were dropped.
    pub fn factored(&self) -> (Self, usize) {
        let unused = self.unused_positions();
        let keep: Vec<_> = self
            .positions
            .iter()
            .copied()
            .filter(|p| !unused.contains(p))
            .collect();
        let reduced = Self::from_support(self.n, |i, j| keep.contains(&(i, j)));
        debug_assert_eq!(reduced.equations.len(), self.equations.len());
        (reduced, unused.len())
    }

    /// Residual of every equation at a candidate, reduced mod `q`.
    pub fn residuals(&self, q: u64, coords: &[u32]) -> Vec<u64> {
        (0..self.equations.len())
            .map(|e| self.residual(e, q, coords))
            .collect()
    }

    #[inline]
    fn residual(&self, e: usize, q: u64, coords: &[u32]) -> u64 {
        let k = self.positions.len();
        let (x, y) = coords.split_at(k);
        let mut plus: u64 = 0;
        let mut minus: u64 = 0;
        for &(s, t) in &self.equations[e].terms {
            plus += u64::from(x[s]) * u64::from(y[t]);
            minus += u64::from(y[s]) * u64::from(x[t]);
        }
        (plus % q + q - minus % q) % q
    }

    /// True when every equation vanishes; stops at the first nonzero residual.
    #[inline]
    pub fn is_commuting(&self, q: u64, coords: &[u32]) -> bool {
        (0..self.equations.len()).all(|e| self.residual(e, q, coords) == 0)
    }

    /// The pair of matrices encoded by a candidate vector.
    pub fn pencil(&self, q: Modulus, coords: &[u32]) -> (FieldMatrix, FieldMatrix) {
        let k = self.positions.len();
        let mut x = FieldMatrix::zeros(q, self.n, self.n);
        let mut y = FieldMatrix::zeros(q, self.n, self.n);
        for (idx, &(i, j)) in self.positions.iter().enumerate() {
            x.set(i, j, i64::from(coords[idx]));
            y.set(i, j, i64::from(coords[k + idx]));
        }
        (x, y)
    }

    /// Exact number of commuting pairs over `F_q`.
    ///
    /// With `factor_free`, unused positions are not enumerated and contribute
    /// a factor `q` per coordinate instead.
    pub fn count(&self, q: Modulus, budget: u64, factor_free: bool) -> Result<u128, CountError> {
        let p = q.get();
        if factor_free {
            let (reduced, dropped) = self.factored();
            let core = reduced.count(q, budget, false)?;
            return Ok(core * candidate_count(p, 2 * dropped));
        }
        par_count(p, self.coordinate_count(), budget, |c| self.is_commuting(p, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::enumerate::par_fold;

    fn q(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn strictly_upper_shape() {
        let s = CommutingSystem::strictly_upper(4);
        assert_eq!(s.coordinate_count(), 12);
        assert_eq!(s.equation_entries(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(s.unused_positions(), vec![(0, 3)]);
        assert_eq!(CommutingSystem::strictly_upper(2).equation_count(), 0);
        assert_eq!(CommutingSystem::strictly_upper(7).equation_count(), 15);
    }

    #[test]
    fn upper_has_one_equation_per_off_diagonal_entry() {
        for n in 1..=6 {
            let s = CommutingSystem::upper(n);
            assert_eq!(s.equation_count(), n * (n - 1) / 2);
            assert!(s.unused_positions().is_empty() || n == 1);
        }
    }

    #[test]
    fn block_system_counts_match_certificates() {
        use crate::bounds::{ambient_dim, equation_count};
        for blocks in [vec![1, 2, 1], vec![2, 1, 2], vec![1, 1, 1, 1], vec![3], vec![1, 2, 2, 1]] {
            let j = Composition::new(blocks).unwrap();
            let s = CommutingSystem::block(&j);
            assert_eq!(s.coordinate_count() as u64, ambient_dim(&j));
            assert_eq!(s.equation_count() as u64, equation_count(&j), "{j}");
        }
    }

    #[test]
    fn residuals_agree_with_commutator() {
        // every candidate of U_4(F_2)^2 and U_3(F_3)^2
        for (n, p) in [(4usize, 2u64), (3, 3)] {
            let s = CommutingSystem::strictly_upper(n);
            let m = q(p);
            let mismatches = par_fold(
                p,
                s.coordinate_count(),
                u64::MAX,
                || 0u64,
                |acc, c| {
                    let (x, y) = s.pencil(m, c);
                    let comm = FieldMatrix::commutator(&x, &y).unwrap();
                    let res = s.residuals(p, c);
                    let entrywise = s
                        .equation_entries()
                        .iter()
                        .zip(&res)
                        .all(|(&(a, b), &r)| comm.value(a, b) == r);
                    if !entrywise || comm.is_zero() != s.is_commuting(p, c) {
                        *acc += 1;
                    }
                },
                |a, b| a + b,
            )
            .unwrap();
            assert_eq!(mismatches, 0);
        }
    }

    #[test]
    fn factoring_is_sound() {
        for p in [2, 3] {
            let s = CommutingSystem::strictly_upper(3);
            assert_eq!(
                s.count(q(p), u64::MAX, true).unwrap(),
                s.count(q(p), u64::MAX, false).unwrap()
            );
        }
        let s = CommutingSystem::strictly_upper(4);
        assert_eq!(
            s.count(q(2), u64::MAX, true).unwrap(),
            s.count(q(2), u64::MAX, false).unwrap()
        );
    }
}
