//! Dimension from the growth of point counts in `q`.
//!
//! For each pair of primes `q1 < q2` the slope `ln(N2/N1) / ln(q2/q1)` is
//! rounded to the nearest integer. The estimate is consistent when every pair
//! rounds to the same value.

use serde::Serialize;

use super::varieties::PointCountTable;
use super::CountError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeSample {
    pub q1: u64,
    pub q2: u64,
    pub slope: f64,
    pub rounded: i64,
    /// `slope - rounded`
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub estimated_dim: i64,
    pub consistent: bool,
    pub samples: Vec<SlopeSample>,
}

pub fn estimate_dimension(table: &PointCountTable) -> Result<DimensionEstimate, CountError> {
    if table.counts.len() < 2 {
        return Err(CountError::TooFewPrimes(table.counts.len()));
    }
    if let Some((&q, _)) = table.counts.iter().find(|(_, &c)| c == 0) {
        return Err(CountError::ZeroCount(q));
    }
    let entries: Vec<(u64, u128)> = table.counts.iter().map(|(&q, &c)| (q, c)).collect();
    let mut samples = Vec::new();
    for (i, &(q1, n1)) in entries.iter().enumerate() {
        for &(q2, n2) in &entries[i + 1..] {
            let slope = ((n2 as f64).ln() - (n1 as f64).ln()) / ((q2 as f64).ln() - (q1 as f64).ln());
            let rounded = slope.round() as i64;
            samples.push(SlopeSample {
                q1,
                q2,
                slope,
                rounded,
                residual: slope - rounded as f64,
            });
        }
    }
    let mut rounded: Vec<i64> = samples.iter().map(|s| s.rounded).collect();
    rounded.sort_unstable();
    let consistent = rounded.first() == rounded.last();
    // lower median
    let estimated_dim = rounded[(rounded.len() - 1) / 2];
    Ok(DimensionEstimate {
        estimated_dim,
        consistent,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::VarietyId;
    use std::collections::BTreeMap;

    fn table(counts: &[(u64, u128)]) -> PointCountTable {
        PointCountTable {
            variety: VarietyId::Nt { n: 2 },
            counts: counts.iter().copied().collect::<BTreeMap<_, _>>(),
            free_coordinate_count: 2,
        }
    }

    #[test]
    fn exact_square_growth() {
        let e = estimate_dimension(&table(&[(2, 4), (3, 9), (5, 25)])).unwrap();
        assert_eq!(e.estimated_dim, 2);
        assert!(e.consistent);
        assert_eq!(e.samples.len(), 3);
        assert!(e.samples.iter().all(|s| s.residual.abs() < 1e-12));
    }

    #[test]
    fn nt3_counts() {
        // 40, 297, 3625 are the brute-force counts of NT_3 over F_2, F_3, F_5
        let e = estimate_dimension(&table(&[(2, 40), (3, 297), (5, 3625)])).unwrap();
        assert_eq!(e.estimated_dim, 5);
        assert!(e.consistent);
    }

    #[test]
    fn single_points() {
        let e = estimate_dimension(&table(&[(2, 1), (3, 1)])).unwrap();
        assert_eq!(e.estimated_dim, 0);
        assert!(e.consistent);
    }

    #[test]
    fn inconsistent_growth_uses_the_median() {
        let e = estimate_dimension(&table(&[(2, 2), (3, 100), (5, 101)])).unwrap();
        assert!(!e.consistent);
        let mut r: Vec<_> = e.samples.iter().map(|s| s.rounded).collect();
        r.sort();
        assert_eq!(e.estimated_dim, r[1]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            estimate_dimension(&table(&[(2, 4)])),
            Err(CountError::TooFewPrimes(1))
        );
        assert_eq!(
            estimate_dimension(&table(&[(2, 4), (3, 0)])),
            Err(CountError::ZeroCount(3))
        );
    }
}
