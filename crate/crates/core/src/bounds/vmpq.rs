//! Components of `V(m,p,q) = {(A,B) in M(m,p) x M(p,q) : AB = 0}`.
//!
//! The components are the rank strata `rank A <= a, rank B <= b` for the
//! componentwise-maximal pairs with `b <= min(p,q)` and `a <= min(p-b, m)`.

use serde::{Deserialize, Serialize};

use super::BoundsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VmpqComponent {
    pub a: usize,
    pub b: usize,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VmpqReport {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    /// Ordered by increasing `b`.
    pub components: Vec<VmpqComponent>,
    pub is_complete_intersection: bool,
    /// `mp + pq`
    pub ambient_dim: u64,
    /// `mq`
    pub equation_count: u64,
}

impl VmpqReport {
    /// Dimension of `V`: the largest component dimension.
    pub fn dim(&self) -> u64 {
        self.components.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// `mp + pq - mq`, saturating at zero.
    pub fn expected_dim(&self) -> u64 {
        self.ambient_dim.saturating_sub(self.equation_count)
    }
}

/// `a(p+m-a) + b(p+q-b) - ab`.
pub fn stratum_dim(m: usize, p: usize, q: usize, a: usize, b: usize) -> u64 {
    let (m, p, q, a, b) = (m as i64, p as i64, q as i64, a as i64, b as i64);
    let d = a * (p + m - a) + b * (p + q - b) - a * b;
    debug_assert!(d >= 0);
    d as u64
}

pub fn vmpq_report(m: usize, p: usize, q: usize) -> Result<VmpqReport, BoundsError> {
    if m == 0 || p == 0 || q == 0 {
        return Err(BoundsError::ZeroDimension { m, p, q });
    }
    let a_max = |b: usize| (p - b).min(m);
    let b_top = p.min(q);
    // a_max is non-increasing in b, so (a_max(b), b) is dominated exactly when
    // a_max(b + 1) == a_max(b)
    let components = (0..=b_top)
        .filter(|&b| b == b_top || a_max(b + 1) < a_max(b))
        .map(|b| {
            let a = a_max(b);
            VmpqComponent {
                a,
                b,
                dim: stratum_dim(m, p, q, a, b),
            }
        })
        .collect();
    Ok(VmpqReport {
        m,
        p,
        q,
        components,
        is_complete_intersection: p + 1 >= m + q,
        ambient_dim: (m * p + p * q) as u64,
        equation_count: (m * q) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comps(r: &VmpqReport) -> Vec<(usize, usize, u64)> {
        r.components.iter().map(|c| (c.a, c.b, c.dim)).collect()
    }

    #[test]
    fn coordinate_axes() {
        let r = vmpq_report(1, 1, 1).unwrap();
        assert_eq!(comps(&r), vec![(1, 0, 1), (0, 1, 1)]);
        assert!(r.is_complete_intersection);
    }

    #[test]
    fn single_component_case() {
        let r = vmpq_report(1, 2, 1).unwrap();
        assert_eq!(comps(&r), vec![(1, 1, 3)]);
        assert!(r.is_complete_intersection);
        assert_eq!(r.expected_dim(), 3);
    }

    #[test]
    fn non_complete_intersection() {
        let r = vmpq_report(2, 1, 2).unwrap();
        assert!(!r.is_complete_intersection);
        assert_eq!(comps(&r), vec![(1, 0, 2), (0, 1, 2)]);
        // 2 components of dim 2 > 4 - 4 = 0 expected
        assert!(r.dim() > r.expected_dim());
    }

    #[test]
    fn zero_sizes_rejected() {
        assert!(vmpq_report(0, 1, 1).is_err());
    }

    #[test]
    fn components_are_maximal_and_admissible() {
        for m in 1..=6 {
            for p in 1..=6 {
                for q in 1..=6 {
                    let r = vmpq_report(m, p, q).unwrap();
                    let admissible = |a: usize, b: usize| b <= p.min(q) && a + b <= p && a <= m;
                    for c in &r.components {
                        assert!(admissible(c.a, c.b));
                        assert!(!admissible(c.a + 1, c.b) && !admissible(c.a, c.b + 1));
                        assert_eq!(c.dim, stratum_dim(m, p, q, c.a, c.b));
                    }
                    // every admissible pair lies under some listed component
                    for b in 0..=p.min(q) {
                        for a in 0..=m.min(p - b) {
                            assert!(r.components.iter().any(|c| c.a >= a && c.b >= b));
                        }
                    }
                    if r.is_complete_intersection {
                        for c in &r.components {
                            assert_eq!(c.dim, r.expected_dim(), "({m},{p},{q})");
                        }
                    }
                }
            }
        }
    }
}
