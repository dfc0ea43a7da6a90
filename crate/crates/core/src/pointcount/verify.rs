//! Set-level checks over finite fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactalg::{rank_of_rows, FieldMatrix, FieldPolynomial, Modulus};

use super::enumerate::{candidate_count, par_fold};
use super::system::CommutingSystem;
use super::CountError;

/// Classification of every point of `NT_4(F_q)` against the two loci
/// `x23 = y23 = 0` and `rank (X12 X23 X34) <= 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExampleAReport {
    pub q: u64,
    /// Candidate pairs enumerated (`q^12`).
    #[serde(serialize_with = "crate::pointcount::as_decimal")]
    pub candidates: u128,
    /// Points of `NT_4(F_q)`.
    #[serde(serialize_with = "crate::pointcount::as_decimal")]
    pub total: u128,
    #[serde(serialize_with = "crate::pointcount::as_decimal")]
    pub in_nt4_1: u128,
    #[serde(serialize_with = "crate::pointcount::as_decimal")]
    pub in_nt4_0: u128,
    #[serde(serialize_with = "crate::pointcount::as_decimal")]
    pub in_both: u128,
    #[serde(serialize_with = "crate::pointcount::as_decimal")]
    pub uncovered: u128,
}

impl ExampleAReport {
    fn merge(mut self, o: Self) -> Self {
        self.total += o.total;
        self.in_nt4_1 += o.in_nt4_1;
        self.in_nt4_0 += o.in_nt4_0;
        self.in_both += o.in_both;
        self.uncovered += o.uncovered;
        self
    }
}

/// Exhaustively checks `NT_4 = {x23 = y23 = 0} ∪ {rank (X12 X23 X34) <= 1}`.
pub fn verify_example_a(q: Modulus, budget: u64) -> Result<ExampleAReport, CountError> {
    let system = CommutingSystem::strictly_upper(4);
    let slot = |pos: (usize, usize)| {
        system
            .positions()
            .iter()
            .position(|&p| p == pos)
            .expect("strictly upper position")
    };
    let k = system.positions().len();
    let (s12, s23, s34) = (slot((0, 1)), slot((1, 2)), slot((2, 3)));
    let p = q.get();
    let report = par_fold(
        p,
        system.coordinate_count(),
        budget,
        ExampleAReport::default,
        |acc, c| {
            if !system.is_commuting(p, c) {
                return;
            }
            acc.total += 1;
            let block = [c[s12], c[s23], c[s34], c[k + s12], c[k + s23], c[k + s34]].map(u64::from);
            let one = c[s23] == 0 && c[k + s23] == 0;
            let zero = rank_of_rows(q, &block, 2, 3) <= 1;
            match (one, zero) {
                (true, true) => {
                    acc.in_nt4_1 += 1;
                    acc.in_nt4_0 += 1;
                    acc.in_both += 1;
                }
                (true, false) => acc.in_nt4_1 += 1,
                (false, true) => acc.in_nt4_0 += 1,
                (false, false) => acc.uncovered += 1,
            }
        },
        ExampleAReport::merge,
    )?;
    Ok(ExampleAReport {
        q: p,
        candidates: candidate_count(p, system.coordinate_count()),
        ..report
    })
}

/// `z_{i,j} -> z_{n+1-j, n+1-i}`, the reflection in the anti-diagonal.
pub fn anti_transpose(m: &FieldMatrix) -> FieldMatrix {
    let n = m.rows();
    FieldMatrix::from_fn(m.modulus(), n, n, |i, j| m.value(n - 1 - j, n - 1 - i) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub n: usize,
    pub q: u64,
    pub mode: SamplingMode,
    /// Points of `NT_n` whose image was checked.
    pub tested: u64,
    pub violations: u64,
}

impl InvolutionReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks that the anti-diagonal reflection, applied to both matrices, maps
/// `NT_n(F_q)` into itself.
///
/// Enumerates every pair when `n <= 4` and the candidates fit in `budget`;
/// otherwise tests `samples` random commuting pairs built as `(X, h(X))` with
/// `h(0) = 0`, or as pairs supported on one off-diagonal block.
pub fn verify_involution(
    n: usize,
    q: Modulus,
    samples: u64,
    seed: u64,
    budget: u64,
) -> Result<InvolutionReport, CountError> {
    let system = CommutingSystem::strictly_upper(n);
    let p = q.get();
    let k = system.positions().len();
    let exhaustive =
        n <= 4 && candidate_count(p, system.coordinate_count()) <= u128::from(budget);

    if exhaustive {
        let image_slot: Vec<usize> = system
            .positions()
            .iter()
            .map(|&(i, j)| {
                let img = (n - 1 - j, n - 1 - i);
                system.positions().iter().position(|&q| q == img).expect("closed")
            })
            .collect();
        let (tested, violations) = par_fold(
            p,
            system.coordinate_count(),
            budget,
            || (0u64, 0u64, vec![0u32; 2 * k]),
            |acc, c| {
                if !system.is_commuting(p, c) {
                    return;
                }
                acc.0 += 1;
                for (s, &t) in image_slot.iter().enumerate() {
                    acc.2[t] = c[s];
                    acc.2[k + t] = c[k + s];
                }
                if !system.is_commuting(p, &acc.2) {
                    acc.1 += 1;
                }
            },
            |a, b| (a.0 + b.0, a.1 + b.1, a.2),
        )
        .map(|(t, v, _)| (t, v))?;
        return Ok(InvolutionReport {
            n,
            q: p,
            mode: SamplingMode::Exhaustive,
            tested,
            violations,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut violations = 0;
    for s in 0..samples {
        let (x, y) = if s % 2 == 0 {
            random_polynomial_pair(&mut rng, n, q)
        } else {
            random_block_pair(&mut rng, n, q)
        };
        let commutes = |a: &FieldMatrix, b: &FieldMatrix| {
            FieldMatrix::commutator(a, b).expect("same shape").is_zero()
        };
        if !commutes(&x, &y) {
            continue;
        }
        tested += 1;
        if !commutes(&anti_transpose(&x), &anti_transpose(&y)) {
            violations += 1;
        }
    }
    Ok(InvolutionReport {
        n,
        q: p,
        mode: SamplingMode::Random,
        tested,
        violations,
    })
}

fn random_strictly_upper(rng: &mut ChaCha8Rng, n: usize, q: Modulus) -> FieldMatrix {
    let p = q.get() as i64;
    FieldMatrix::from_fn(q, n, n, |i, j| if i < j { rng.gen_range(0..p) } else { 0 })
}

fn random_polynomial_pair(rng: &mut ChaCha8Rng, n: usize, q: Modulus) -> (FieldMatrix, FieldMatrix) {
    let x = random_strictly_upper(rng, n, q);
    let p = q.get() as i64;
    let mut coeffs: Vec<i64> = (0..n.max(1)).map(|_| rng.gen_range(0..p)).collect();
    coeffs[0] = 0;
    let y = FieldPolynomial::from_coeffs(q, &coeffs)
        .eval_matrix(&x)
        .expect("square");
    (x, y)
}

/// Both matrices supported on the rows before a cut and the columns after it.
fn random_block_pair(rng: &mut ChaCha8Rng, n: usize, q: Modulus) -> (FieldMatrix, FieldMatrix) {
    let cut = if n > 1 { rng.gen_range(1..n) } else { 1 };
    let p = q.get() as i64;
    let mut draw = || {
        FieldMatrix::from_fn(q, n, n, |i, j| {
            if i < cut && j >= cut {
                rng.gen_range(0..p)
            } else {
                0
            }
        })
    };
    let x = draw();
    let y = draw();
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::DEFAULT_BUDGET;

    fn f(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn example_a_over_f2() {
        let r = verify_example_a(f(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.candidates, 4096);
        assert_eq!(r.uncovered, 0);
        assert_eq!(r.in_nt4_1 + r.in_nt4_0 - r.in_both, r.total);
        assert_eq!(r.total, crate::pointcount::count_nt(4, f(2), DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn zero_pair_lies_in_both_loci() {
        // both loci contain the zero pair, so in_both is never empty
        let r = verify_example_a(f(2), DEFAULT_BUDGET).unwrap();
        assert!(r.in_both >= 1);
    }

    #[test]
    fn example_a_budget() {
        assert!(matches!(
            verify_example_a(f(3), 1000),
            Err(CountError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn anti_transpose_is_an_involution() {
        let m = FieldMatrix::from_rows(f(7), &[[0, 1, 2], [0, 0, 3], [0, 0, 0]]).unwrap();
        let a = anti_transpose(&m);
        assert_eq!(a, FieldMatrix::from_rows(f(7), &[[0, 3, 2], [0, 0, 1], [0, 0, 0]]).unwrap());
        assert_eq!(anti_transpose(&a), m);
        let z = FieldMatrix::zeros(f(7), 3, 3);
        assert_eq!(anti_transpose(&z), z);
    }

    #[test]
    fn involution_exhaustive() {
        let r = verify_involution(3, f(2), 0, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.mode, SamplingMode::Exhaustive);
        assert_eq!(r.tested, 40);
        assert!(r.holds());
        let r = verify_involution(4, f(3), 0, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.mode, SamplingMode::Exhaustive);
        assert!(r.holds());
    }

    #[test]
    fn involution_random() {
        let r = verify_involution(7, f(5), 200, 42, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.mode, SamplingMode::Random);
        assert_eq!(r.tested, 200);
        assert!(r.holds());
        assert_eq!(r, verify_involution(7, f(5), 200, 42, DEFAULT_BUDGET).unwrap());
    }
}
