//! Enumerative checks of the Plücker description for `n = 2` and for `NT_4`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::exactalg::{rank_of_rows, FieldMatrix, Modulus};
use crate::pointcount::{par_fold, CommutingSystem, DEFAULT_BUDGET};

use super::pencil::{gamma, MatrixPencil};
use super::vector::PlueckerVector;
use super::PlueckerError;

fn check_field(q: Modulus) -> Result<(), PlueckerError> {
    match q.get() {
        2 | 3 => Ok(()),
        p => Err(PlueckerError::UnsupportedField(p)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleEReport {
    pub q: u64,
    /// Rank of the three linear equations in the six coordinates.
    pub linear_rank: usize,
    /// `q^2 + q + 1`
    pub expected_points: usize,
    /// Projective points of the linear section, from its null space.
    pub points_e2e3e4: usize,
    /// The same set, found by scanning all of `P^5(F_q)`.
    pub points_full_scan: usize,
    pub points_on_quadric: usize,
    /// Distinct planes of commuting pencils outside `C0`.
    pub image_points: usize,
    pub all_equal: bool,
}

/// 0-based positions of `M(2)`: 11, 12, 21, 22.
const P11: (usize, usize) = (0, 0);
const P12: (usize, usize) = (0, 1);
const P21: (usize, usize) = (1, 0);
const P22: (usize, usize) = (1, 1);

/// Linear forms `p_{(1,2)(2,1)}`, `p_{(1,1)(1,2)} + p_{(1,2)(2,2)}` and
/// `p_{(2,1)(1,1)} + p_{(2,2)(2,1)}` as rows over the stored coordinates.
fn linear_equations(q: Modulus) -> FieldMatrix {
    let forms: [&[((usize, usize), (usize, usize))]; 3] = [
        &[(P12, P21)],
        &[(P11, P12), (P12, P22)],
        &[(P21, P11), (P22, P21)],
    ];
    let mut out = FieldMatrix::zeros(q, 3, 6);
    for (row, terms) in forms.iter().enumerate() {
        for &(a, b) in *terms {
            // the coefficient of stored coordinate c in p_{a,b} is p_{a,b} at the unit vector e_c
            for c in 0..6 {
                let mut unit = vec![0; 6];
                unit[c] = 1;
                let v = PlueckerVector::from_coords(2, q, unit).at(a, b);
                let old = out.value(row, c);
                out.set(row, c, q.add(old, v) as i64);
            }
        }
    }
    out
}

fn on_quadric(v: &PlueckerVector) -> bool {
    let m = v.modulus();
    let t1 = m.mul(v.at(P11, P22), v.at(P12, P21));
    let t2 = m.mul(v.at(P11, P12), v.at(P22, P21));
    let t3 = m.mul(v.at(P11, P21), v.at(P22, P12));
    m.add(m.sub(t1, t2), t3) == 0
}

fn satisfies(eqs: &FieldMatrix, coords: &[u64]) -> bool {
    let m = eqs.modulus();
    (0..eqs.rows()).all(|r| {
        (0..eqs.cols()).fold(0, |acc, c| m.add(acc, m.mul(eqs.value(r, c), coords[c]))) == 0
    })
}

/// Odometer over `F_q^len`, digit 0 most significant.
fn for_each_vector(q: u64, len: usize, mut visit: impl FnMut(&[u64])) {
    let mut v = vec![0u64; len];
    loop {
        visit(&v);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            v[pos] += 1;
            if v[pos] < q {
                break;
            }
            v[pos] = 0;
        }
    }
}

/// Compares the linear section of `P^5` cut out by the three commutator
/// equations with the image of commuting `2 x 2` pencils, over `F_2` or `F_3`.
pub fn verify_example_e(q: Modulus) -> Result<ExampleEReport, PlueckerError> {
    check_field(q)?;
    let p = q.get();
    let eqs = linear_equations(q);
    let linear_rank = eqs.rank();
    let kernel = eqs.null_space();

    let mut linear = BTreeSet::new();
    for_each_vector(p, kernel.len(), |c| {
        let v: Vec<u64> = (0..6)
            .map(|k| {
                kernel
                    .iter()
                    .zip(c)
                    .fold(0, |acc, (b, &ci)| q.add(acc, q.mul(b[k], ci)))
            })
            .collect();
        let v = PlueckerVector::from_coords(2, q, v);
        if !v.is_zero() {
            linear.insert(v.normalized());
        }
    });

    let mut scanned = BTreeSet::new();
    for_each_vector(p, 6, |c| {
        let v = PlueckerVector::from_coords(2, q, c.to_vec());
        if !v.is_zero() && satisfies(&eqs, c) {
            scanned.insert(v.normalized());
        }
    });

    let points_on_quadric = linear.iter().filter(|v| on_quadric(v)).count();

    let mut image = BTreeSet::new();
    for_each_vector(p, 8, |c| {
        let m = |off: usize| {
            FieldMatrix::from_fn(q, 2, 2, |i, j| c[off + 2 * i + j] as i64)
        };
        let pencil = MatrixPencil::new(m(0), m(4)).expect("2x2 pair");
        if pencil.commutes() && !pencil.in_c0() {
            image.insert(gamma(&pencil).expect("outside C0").normalized());
        }
    });

    let expected_points = (p * p + p + 1) as usize;
    let all_equal = linear == scanned
        && linear == image
        && points_on_quadric == linear.len()
        && linear.len() == expected_points;
    Ok(ExampleEReport {
        q: p,
        linear_rank,
        expected_points,
        points_e2e3e4: linear.len(),
        points_full_scan: scanned.len(),
        points_on_quadric,
        image_points: image.len(),
        all_equal,
    })
}

impl PartialOrd for PlueckerVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlueckerVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n(), self.modulus().get(), self.coords())
            .cmp(&(other.n(), other.modulus().get(), other.coords()))
    }
}

/// Planes of `NT_4(F_q)` pencils outside `C0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Gamma4Report {
    pub q: u64,
    /// Points of `NT_4(F_q)`.
    pub points: u64,
    /// Points inside `C0`, skipped.
    pub degenerate: u64,
    pub tested: u64,
    /// Tested points breaking one of `p_{(1,2)(2,3)} = 0`,
    /// `p_{(2,3)(3,4)} = 0`, `p_{(1,2)(2,4)} + p_{(1,3)(3,4)} = 0`.
    pub violations: u64,
    /// `p_{(1,2)(3,4)} = 0`
    pub on_p1234_zero: u64,
    /// `x23 = y23 = 0`
    pub on_x23_zero: u64,
    pub on_both: u64,
    pub unclassified: u64,
    /// Points where `p_{(1,2)(3,4)} = 0` differs from
    /// `rank (X12 X23 X34) <= 1`.
    pub rank_locus_mismatch: u64,
}

impl Gamma4Report {
    pub fn holds(&self) -> bool {
        self.violations == 0 && self.unclassified == 0 && self.rank_locus_mismatch == 0
    }

    fn merge(mut self, o: Self) -> Self {
        self.points += o.points;
        self.degenerate += o.degenerate;
        self.tested += o.tested;
        self.violations += o.violations;
        self.on_p1234_zero += o.on_p1234_zero;
        self.on_x23_zero += o.on_x23_zero;
        self.on_both += o.on_both;
        self.unclassified += o.unclassified;
        self.rank_locus_mismatch += o.rank_locus_mismatch;
        self
    }
}

/// Checks the three linear equations on `γ_4(NT_4 \ C0)` over `F_2` or `F_3`
/// and sorts the points between `p_{(1,2)(3,4)} = 0` and `x23 = y23 = 0`.
pub fn verify_gamma4_image(q: Modulus) -> Result<Gamma4Report, PlueckerError> {
    check_field(q)?;
    let system = CommutingSystem::strictly_upper(4);
    let p = q.get();
    let report = par_fold(
        p,
        system.coordinate_count(),
        DEFAULT_BUDGET,
        Gamma4Report::default,
        |acc, c| {
            if !system.is_commuting(p, c) {
                return;
            }
            acc.points += 1;
            let (x, y) = system.pencil(q, c);
            let pencil = MatrixPencil::new(x, y).expect("4x4 pair");
            let Ok(v) = gamma(&pencil) else {
                acc.degenerate += 1;
                return;
            };
            acc.tested += 1;
            let eq = [
                v.at((0, 1), (1, 2)),
                v.at((1, 2), (2, 3)),
                q.add(v.at((0, 1), (1, 3)), v.at((0, 2), (2, 3))),
            ];
            if eq.iter().any(|&e| e != 0) {
                acc.violations += 1;
            }
            let p1234 = v.at((0, 1), (2, 3)) == 0;
            let x23 = pencil.x().value(1, 2) == 0 && pencil.y().value(1, 2) == 0;
            match (p1234, x23) {
                (true, true) => {
                    acc.on_p1234_zero += 1;
                    acc.on_x23_zero += 1;
                    acc.on_both += 1;
                }
                (true, false) => acc.on_p1234_zero += 1,
                (false, true) => acc.on_x23_zero += 1,
                (false, false) => acc.unclassified += 1,
            }
            let cols = [(0, 1), (1, 2), (2, 3)];
            let block: Vec<u64> = [pencil.x(), pencil.y()]
                .iter()
                .flat_map(|m| cols.iter().map(move |&(i, j)| m.value(i, j)))
                .collect();
            if (rank_of_rows(q, &block, 2, 3) <= 1) != p1234 {
                acc.rank_locus_mismatch += 1;
            }
        },
        Gamma4Report::merge,
    )?;
    Ok(Gamma4Report { q: p, ..report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn linear_equations_match_the_residuals() {
        // the residuals of a 2x2 plane are e2, e3, e4 and -e2
        let q = f(3);
        let eqs = linear_equations(q);
        assert_eq!(eqs.rank(), 3);
        for_each_vector(3, 6, |c| {
            let v = PlueckerVector::from_coords(2, q, c.to_vec());
            assert_eq!(satisfies(&eqs, c), v.image_equation_residuals().is_zero());
        });
    }

    #[test]
    fn two_by_two_image_over_small_fields() {
        for p in [2, 3] {
            let r = verify_example_e(f(p)).unwrap();
            assert_eq!(r.linear_rank, 3);
            assert_eq!(r.points_e2e3e4, r.expected_points);
            assert_eq!(r.points_full_scan, r.expected_points);
            assert_eq!(r.image_points, r.expected_points);
            assert!(r.all_equal, "{r:?}");
        }
    }

    #[test]
    fn rejects_larger_fields() {
        assert_eq!(verify_example_e(f(5)), Err(PlueckerError::UnsupportedField(5)));
        assert_eq!(verify_gamma4_image(f(7)), Err(PlueckerError::UnsupportedField(7)));
    }

    #[test]
    fn gamma4_over_f2() {
        let r = verify_gamma4_image(f(2)).unwrap();
        assert_eq!(r.points, crate::pointcount::count_nt(4, f(2), DEFAULT_BUDGET).unwrap() as u64);
        assert_eq!(r.points, r.degenerate + r.tested);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.on_p1234_zero + r.on_x23_zero - r.on_both, r.tested);
    }

    #[test]
    fn gamma4_over_f3() {
        let r = verify_gamma4_image(f(3)).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn pairs_with_x23_zero_are_on_that_locus() {
        // x23 = y23 = 0 and rank (X12 X23 X34) <= 1 both kill p_{(1,2)(2,3)}
        let q = f(3);
        let mut x = FieldMatrix::zeros(q, 4, 4);
        let mut y = FieldMatrix::zeros(q, 4, 4);
        x.set(0, 1, 1);
        y.set(2, 3, 1);
        let pencil = MatrixPencil::new(x, y).unwrap();
        assert!(pencil.commutes());
        let v = gamma(&pencil).unwrap();
        assert_eq!(v.at((0, 1), (1, 2)), 0);
        assert_eq!(v.at((1, 2), (2, 3)), 0);
        assert_ne!(v.at((0, 1), (2, 3)), 0);
    }
}
