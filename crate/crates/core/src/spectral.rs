//! Minimal polynomials and spectral projectors of upper triangular matrices.
//!
//! For `X` upper triangular with minimal polynomial
//! `f = (t - λ_1)^{m_1} ... (t - λ_r)^{m_r}`, set `f_i = f / (t - λ_i)^{m_i}`
//! and pick `g_i` with `g_i f_i ≡ 1 mod (t - λ_i)^{m_i}`. Then `Σ g_i f_i = 1`
//! and `I_i = g_i(X) f_i(X)` are complementary idempotents onto the
//! generalized eigenspaces. A matrix `Y` commuting with `X` preserves each of
//! them, which splits a commuting pair into blocks.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{AlgebraError, FieldMatrix, FieldPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("matrix is not square: {0:?}")]
    NotSquare((usize, usize)),
    #[error("matrix is not upper triangular")]
    NotTriangular,
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("matrices of shapes {0:?} and {1:?} cannot form a pair")]
    ShapeMismatch((usize, usize), (usize, usize)),
    #[error("no Bezout identity for eigenvalue {0}")]
    Bezout(u64),
    #[error("diagonal position {index} is claimed by {hits} projectors")]
    Assignment { index: usize, hits: usize },
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Minimal polynomial of a triangular matrix, with its factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPolynomial {
    /// Distinct diagonal values in order of first appearance.
    pub eigenvalues: Vec<u64>,
    pub exponents: Vec<u32>,
    pub poly: FieldPolynomial,
}

impl MinimalPolynomial {
    /// `(t - λ_i)^{m_i}`.
    pub fn primary_factor(&self, i: usize) -> FieldPolynomial {
        FieldPolynomial::linear_power(self.poly.modulus(), self.eigenvalues[i], self.exponents[i])
    }

    /// `f_i = f / (t - λ_i)^{m_i}`.
    pub fn cofactor(&self, i: usize) -> FieldPolynomial {
        let m = self.poly.modulus();
        (0..self.eigenvalues.len())
            .filter(|&j| j != i)
            .fold(FieldPolynomial::one(m), |acc, j| {
                acc.mul(&self.primary_factor(j)).expect("same modulus")
            })
    }
}

/// The projectors `I_i` together with the polynomials that produce them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projectors {
    pub min_poly: MinimalPolynomial,
    pub cofactors: Vec<FieldPolynomial>,
    pub inverses: Vec<FieldPolynomial>,
    pub projectors: Vec<FieldMatrix>,
}

/// Block decomposition of a commuting triangular pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Column `j` is `I_i e_j` for the block `i` containing `j`.
    pub basis: FieldMatrix,
    /// 0-based indices of each block, one block per eigenvalue.
    pub blocks: Vec<Vec<usize>>,
}

/// Everything computed for a pair, as dumped by the command line tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<u64>,
    pub exponents: Vec<u32>,
    pub min_poly: FieldPolynomial,
    pub cofactors: Vec<FieldPolynomial>,
    pub inverses: Vec<FieldPolynomial>,
    pub projectors: Vec<FieldMatrix>,
    /// Index sets, 1-based in the serialized form.
    #[serde(serialize_with = "one_based")]
    pub partition: Vec<Vec<usize>>,
    pub basis: FieldMatrix,
}

fn one_based<S: Serializer>(blocks: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
    let shifted: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.iter().map(|j| j + 1).collect())
        .collect();
    shifted.serialize(s)
}

fn check_triangular(x: &FieldMatrix) -> Result<(), SpectralError> {
    if !x.is_square() {
        return Err(SpectralError::NotSquare(x.shape()));
    }
    if !x.is_upper_triangular() {
        return Err(SpectralError::NotTriangular);
    }
    Ok(())
}

/// `(X - λ I)^e`
fn shifted_power(x: &FieldMatrix, lambda: u64, e: u32) -> FieldMatrix {
    x.add_scalar(-(lambda as i64))
        .and_then(|n| n.pow(e))
        .expect("square")
}

pub fn min_poly_triangular(x: &FieldMatrix) -> Result<MinimalPolynomial, SpectralError> {
    check_triangular(x)?;
    let m = x.modulus();
    let mut eigenvalues = Vec::new();
    for i in 0..x.rows() {
        let d = x.value(i, i);
        if !eigenvalues.contains(&d) {
            eigenvalues.push(d);
        }
    }
    let mut exponents = Vec::with_capacity(eigenvalues.len());
    let mut poly = FieldPolynomial::one(m);
    for &lambda in &eigenvalues {
        let n = x.add_scalar(-(lambda as i64))?;
        let mut power = n.clone();
        let mut rank = power.rank();
        let mut e = 1;
        loop {
            let next = power.mat_mul(&n)?;
            let next_rank = next.rank();
            if next_rank == rank {
                break;
            }
            power = next;
            rank = next_rank;
            e += 1;
        }
        exponents.push(e);
        poly = poly.mul(&FieldPolynomial::linear_power(m, lambda, e))?;
    }
    Ok(MinimalPolynomial {
        eigenvalues,
        exponents,
        poly,
    })
}

pub fn build_projectors(x: &FieldMatrix) -> Result<Projectors, SpectralError> {
    let min_poly = min_poly_triangular(x)?;
    let m = x.modulus();
    let r = min_poly.eigenvalues.len();
    let mut cofactors = Vec::with_capacity(r);
    let mut inverses = Vec::with_capacity(r);
    let mut bezout = FieldPolynomial::zero(m);
    for i in 0..r {
        let fi = min_poly.cofactor(i);
        let pi = min_poly.primary_factor(i);
        let xg = FieldPolynomial::xgcd(&fi, &pi)?;
        if xg.gcd != FieldPolynomial::one(m) {
            return Err(SpectralError::Bezout(min_poly.eigenvalues[i]));
        }
        let gi = xg.u.div_rem(&pi)?.1;
        bezout = bezout.add(&gi.mul(&fi)?)?;
        cofactors.push(fi);
        inverses.push(gi);
    }
    if bezout != FieldPolynomial::one(m) {
        return Err(SpectralError::Check(format!("sum g_i f_i = {bezout}")));
    }
    let projectors = inverses
        .iter()
        .zip(&cofactors)
        .map(|(g, f)| Ok(g.eval_matrix(x)?.mat_mul(&f.eval_matrix(x)?)?))
        .collect::<Result<Vec<_>, SpectralError>>()?;
    Ok(Projectors {
        min_poly,
        cofactors,
        inverses,
        projectors,
    })
}

/// Splits a commuting triangular pair along the generalized eigenspaces of `x`.
///
/// Every claimed property is checked by rank computations before returning:
/// the columns of each block span `ker (X - λ_i I)^{m_i}`, that span is
/// stable under `x` and `y`, and each projector commutes with `y`.
pub fn lemma4_partition(x: &FieldMatrix, y: &FieldMatrix) -> Result<Partition, SpectralError> {
    Ok(analyze_pair(x, y)?.1)
}

/// Projectors of `x` and the partition of the pair, bundled for reporting.
pub fn spectral_data(x: &FieldMatrix, y: &FieldMatrix) -> Result<SpectralData, SpectralError> {
    let (p, part) = analyze_pair(x, y)?;
    Ok(SpectralData {
        eigenvalues: p.min_poly.eigenvalues,
        exponents: p.min_poly.exponents,
        min_poly: p.min_poly.poly,
        cofactors: p.cofactors,
        inverses: p.inverses,
        projectors: p.projectors,
        partition: part.blocks,
        basis: part.basis,
    })
}

fn analyze_pair(x: &FieldMatrix, y: &FieldMatrix) -> Result<(Projectors, Partition), SpectralError> {
    check_triangular(x)?;
    check_triangular(y)?;
    if x.shape() != y.shape() {
        return Err(SpectralError::ShapeMismatch(x.shape(), y.shape()));
    }
    if !FieldMatrix::commutator(x, y)?.is_zero() {
        return Err(SpectralError::NotCommuting);
    }
    let proj = build_projectors(x)?;
    let n = x.rows();
    let mut blocks = vec![Vec::new(); proj.projectors.len()];
    let mut basis = FieldMatrix::zeros(x.modulus(), n, n);
    for j in 0..n {
        let hits: Vec<usize> = proj
            .projectors
            .iter()
            .enumerate()
            .filter(|(_, p)| p.value(j, j) == 1)
            .map(|(i, _)| i)
            .collect();
        let [i] = hits[..] else {
            return Err(SpectralError::Assignment {
                index: j,
                hits: hits.len(),
            });
        };
        blocks[i].push(j);
        for row in 0..n {
            basis.set(row, j, proj.projectors[i].value(row, j) as i64);
        }
    }

    let fail = |what: String| Err(SpectralError::Check(what));
    if basis.rank() != n {
        return fail("basis is singular".into());
    }
    for (i, block) in blocks.iter().enumerate() {
        let lambda = proj.min_poly.eigenvalues[i];
        let e = proj.min_poly.exponents[i];
        let cols = basis.select_columns(block);
        let k = block.len();
        if cols.rank() != k {
            return fail(format!("block {i} columns are dependent"));
        }
        let kernel_map = shifted_power(x, lambda, e);
        if !kernel_map.mat_mul(&cols)?.is_zero() {
            return fail(format!("block {i} leaves the generalized eigenspace"));
        }
        if n - kernel_map.rank() != k {
            return fail(format!("block {i} does not span the generalized eigenspace"));
        }
        for (name, a) in [("x", x), ("y", y)] {
            if cols.hstack(&a.mat_mul(&cols)?)?.rank() != k {
                return fail(format!("block {i} is not {name}-stable"));
            }
        }
        if !FieldMatrix::commutator(&proj.projectors[i], y)?.is_zero() {
            return fail(format!("projector {i} does not commute with y"));
        }
    }
    Ok((proj, Partition { basis, blocks }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Modulus;
    use proptest::prelude::*;

    fn f(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    fn mat(p: u64, rows: &[&[i64]]) -> FieldMatrix {
        FieldMatrix::from_rows(f(p), rows).unwrap()
    }

    fn running_example() -> FieldMatrix {
        mat(7, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]])
    }

    #[test]
    fn diagonal_min_poly() {
        let mp = min_poly_triangular(&mat(5, &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(mp.eigenvalues, vec![0, 1]);
        assert_eq!(mp.exponents, vec![1, 1]);
        assert_eq!(mp.poly, FieldPolynomial::from_coeffs(f(5), &[0, -1, 1]));
    }

    #[test]
    fn regular_nilpotent_min_poly() {
        for n in 1..=6 {
            let x = FieldMatrix::from_fn(f(3), n, n, |i, j| i64::from(j == i + 1));
            let mp = min_poly_triangular(&x).unwrap();
            assert_eq!(mp.eigenvalues, vec![0]);
            assert_eq!(mp.exponents, vec![n as u32]);
            assert_eq!(mp.poly, FieldPolynomial::linear_power(f(3), 0, n as u32));
        }
    }

    #[test]
    fn running_example_min_poly() {
        let mp = min_poly_triangular(&running_example()).unwrap();
        assert_eq!(mp.eigenvalues, vec![0, 1]);
        assert_eq!(mp.exponents, vec![2, 1]);
        assert_eq!(mp.poly, FieldPolynomial::from_coeffs(f(7), &[0, 0, -1, 1]));
    }

    #[test]
    fn rejects_lower_entries() {
        let x = mat(7, &[&[0, 0], &[1, 0]]);
        assert_eq!(min_poly_triangular(&x), Err(SpectralError::NotTriangular));
        let r = mat(7, &[&[0, 0, 1]]);
        assert!(matches!(build_projectors(&r), Err(SpectralError::NotSquare(_))));
    }

    #[test]
    fn diagonal_projectors() {
        let p = build_projectors(&mat(5, &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(p.projectors, vec![mat(5, &[&[1, 0], &[0, 0]]), mat(5, &[&[0, 0], &[0, 1]])]);
    }

    #[test]
    fn single_eigenvalue_projector_is_identity() {
        let x = mat(5, &[&[2, 1, 4], &[0, 2, 3], &[0, 0, 2]]);
        let p = build_projectors(&x).unwrap();
        assert_eq!(p.cofactors, vec![FieldPolynomial::one(f(5))]);
        assert_eq!(p.inverses, vec![FieldPolynomial::one(f(5))]);
        assert_eq!(p.projectors, vec![FieldMatrix::identity(f(5), 3)]);
    }

    #[test]
    fn running_example_projectors() {
        let x = running_example();
        let p = build_projectors(&x).unwrap();
        assert_eq!(p.inverses[0], FieldPolynomial::from_coeffs(f(7), &[-1, -1]));
        assert_eq!(p.inverses[1], FieldPolynomial::one(f(7)));
        let x2 = x.pow(2).unwrap();
        assert_eq!(p.projectors[0], FieldMatrix::identity(f(7), 3).sub(&x2).unwrap());
        assert_eq!(p.projectors[1], x2);
        assert_eq!(p.projectors[0], mat(7, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
    }

    #[test]
    fn zero_pair_is_one_block() {
        let z = FieldMatrix::zeros(f(5), 4, 4);
        let part = lemma4_partition(&z, &z).unwrap();
        assert_eq!(part.blocks, vec![vec![0, 1, 2, 3]]);
        assert_eq!(part.basis, FieldMatrix::identity(f(5), 4));
    }

    #[test]
    fn diagonal_pair_splits() {
        let x = mat(5, &[&[0, 0], &[0, 1]]);
        let part = lemma4_partition(&x, &FieldMatrix::zeros(f(5), 2, 2)).unwrap();
        assert_eq!(part.blocks, vec![vec![0], vec![1]]);
        assert_eq!(part.basis, FieldMatrix::identity(f(5), 2));
    }

    #[test]
    fn running_example_partition() {
        let x = running_example();
        let part = lemma4_partition(&x, &x.pow(2).unwrap()).unwrap();
        assert_eq!(part.blocks, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn basis_need_not_be_a_permutation() {
        // X = [[0,1],[0,1]]: the eigenvector for 1 is e1 + e2
        let x = mat(5, &[&[0, 1], &[0, 1]]);
        let part = lemma4_partition(&x, &x).unwrap();
        assert_eq!(part.basis, mat(5, &[&[1, 1], &[0, 1]]));
        assert_eq!(part.blocks, vec![vec![0], vec![1]]);
    }

    #[test]
    fn rejects_non_commuting_pairs() {
        let x = mat(3, &[&[0, 1], &[0, 0]]);
        let y = mat(3, &[&[1, 0], &[0, 0]]);
        assert_eq!(lemma4_partition(&x, &y), Err(SpectralError::NotCommuting));
    }

    #[test]
    fn serialized_partition_is_one_based() {
        let x = running_example();
        let data = spectral_data(&x, &x).unwrap();
        let v = serde_json::to_value(&data).unwrap();
        assert_eq!(v["partition"], serde_json::json!([[1, 2], [3]]));
        assert_eq!(v["exponents"], serde_json::json!([2, 1]));
    }

    /// Upper triangular `n x n`, diagonal drawn from a small pool so that
    /// eigenvalues repeat and exponents above one are common.
    fn triangular() -> impl Strategy<Value = FieldMatrix> {
        (1usize..=8, prop::sample::select(vec![7u64, 11]), 1i64..=3)
            .prop_flat_map(|(n, p, pool)| {
                (
                    Just(n),
                    Just(p),
                    prop::collection::vec(0..pool, n),
                    prop::collection::vec(0..p as i64, n * n),
                    prop::collection::vec(prop::bool::weighted(0.6), n * n),
                )
            })
            .prop_map(|(n, p, diag, upper, keep)| {
                FieldMatrix::from_fn(f(p), n, n, |i, j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => diag[i],
                    std::cmp::Ordering::Less if keep[i * n + j] => upper[i * n + j],
                    _ => 0,
                })
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn min_poly_is_minimal(x in triangular()) {
            let mp = min_poly_triangular(&x).unwrap();
            prop_assert!(mp.poly.eval_matrix(&x).unwrap().is_zero());
            for i in 0..mp.exponents.len() {
                let mut smaller = mp.clone();
                smaller.exponents[i] -= 1;
                let divisor = (0..smaller.eigenvalues.len())
                    .fold(FieldPolynomial::one(x.modulus()), |acc, j| {
                        acc.mul(&smaller.primary_factor(j)).unwrap()
                    });
                prop_assert!(!divisor.eval_matrix(&x).unwrap().is_zero());
            }
        }

        #[test]
        fn projector_identities(x in triangular()) {
            let p = build_projectors(&x).unwrap();
            let n = x.rows();
            let mut sum = FieldMatrix::zeros(x.modulus(), n, n);
            for (i, a) in p.projectors.iter().enumerate() {
                prop_assert_eq!(&a.mat_mul(a).unwrap(), a);
                prop_assert!(a.is_upper_triangular());
                prop_assert!(FieldMatrix::commutator(a, &x).unwrap().is_zero());
                for b in &p.projectors[i + 1..] {
                    prop_assert!(a.mat_mul(b).unwrap().is_zero());
                }
                let kernel = shifted_power(&x, p.min_poly.eigenvalues[i], p.min_poly.exponents[i]);
                prop_assert_eq!(a.rank(), n - kernel.rank());
                sum = sum.add(a).unwrap();
            }
            prop_assert_eq!(sum, FieldMatrix::identity(x.modulus(), n));
        }

        #[test]
        fn polynomial_pairs_split(x in triangular(), h in prop::collection::vec(0i64..11, 1..5)) {
            let y = FieldPolynomial::from_coeffs(x.modulus(), &h).eval_matrix(&x).unwrap();
            let part = lemma4_partition(&x, &y).unwrap();
            let mut seen: Vec<usize> = part.blocks.concat();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..x.rows()).collect::<Vec<_>>());
            prop_assert!(part.basis.is_upper_triangular());
            prop_assert!((0..x.rows()).all(|j| part.basis.value(j, j) == 1));
        }
    }
}
