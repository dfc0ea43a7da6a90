//! Dense matrices over a prime field.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::field::{Modulus, PrimeFieldElement};
use super::AlgebraError;

/// Row-major dense matrix. All entries share the single stored modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        Self {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from integer rows, reducing every entry modulo `p`.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Modulus, rows: &[R]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(AlgebraError::ShapeMismatch {
                    op: "from_rows",
                    left: (1, cols),
                    right: (1, r.len()),
                });
            }
            data.extend(r.iter().map(|&v| modulus.reduce(v)));
        }
        Ok(Self {
            modulus,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Wraps already-reduced row-major values.
    pub fn from_values(
        modulus: Modulus,
        rows: usize,
        cols: usize,
        data: Vec<u64>,
    ) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch {
                op: "from_values",
                left: (rows, cols),
                right: (1, data.len()),
            });
        }
        let p = modulus.get();
        Ok(Self {
            modulus,
            rows,
            cols,
            data: data.into_iter().map(|v| v % p).collect(),
        })
    }

    pub fn from_fn(
        modulus: Modulus,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(modulus.reduce(f(i, j)));
            }
        }
        Self {
            modulus,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Row-major reduced entries.
    #[inline]
    pub fn values(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> PrimeFieldElement {
        self.modulus.element(self.value(i, j) as i64)
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = self.modulus.reduce(v);
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.value(i, j) == 0))
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i + 1)).all(|j| self.value(i, j) == 0))
    }

    fn check_same_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.modulus != other.modulus {
            return Err(AlgebraError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), AlgebraError> {
        self.check_same_field(other)?;
        if self.shape() != other.shape() {
            return Err(AlgebraError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let m = self.modulus;
        let p = m.get();
        let mut out = Self::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = (*d + a * b) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(other, "add")?;
        let m = self.modulus;
        Ok(self.zip_with(other, |a, b| m.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(other, "sub")?;
        let m = self.modulus;
        Ok(self.zip_with(other, |a, b| m.sub(a, b)))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        Self {
            modulus: self.modulus,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        Self {
            modulus: m,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| m.mul(a, c)).collect(),
        }
    }

    /// `self + c * I`; requires a square matrix.
    pub fn add_scalar(&self, c: i64) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.shape()));
        }
        let mut out = self.clone();
        let c = self.modulus.reduce(c);
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            out.data[idx] = self.modulus.add(out.data[idx], c);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.shape()));
        }
        let mut acc = Self::identity(self.modulus, self.rows);
        for _ in 0..exp {
            acc = acc.mat_mul(self)?;
        }
        Ok(acc)
    }

    /// `XY - YX`.
    pub fn commutator(x: &Self, y: &Self) -> Result<Self, AlgebraError> {
        x.check_same_shape(y, "commutator")?;
        if !x.is_square() {
            return Err(AlgebraError::NotSquare(x.shape()));
        }
        x.mat_mul(y)?.sub(&y.mat_mul(x)?)
    }

    /// Reduced row echelon form and pivot columns. First-nonzero pivoting.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let m = self.modulus;
        let mut a = self.clone();
        let (rows, cols) = self.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| a.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    a.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = m.inv(a.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                a.data[r * cols + j] = m.mul(a.data[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = m.mul(f, a.data[r * cols + j]);
                    a.data[i * cols + j] = m.sub(a.data[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.modulus, &self.data, self.rows, self.cols)
    }

    /// Basis of the right null space `{v : Av = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let m = self.modulus;
        let cols = self.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.neg(r.data[row * cols + f]);
                }
                v
            })
            .collect()
    }

    /// The columns listed in `idx`, in that order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.modulus, self.rows, idx.len(), |i, j| {
            self.value(i, idx[j]) as i64
        })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_field(other)?;
        if self.rows != other.rows {
            return Err(AlgebraError::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self::from_fn(self.modulus, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.value(i, j) as i64
            } else {
                other.value(i, j - self.cols) as i64
            }
        }))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u64]>::to_vec).collect()
    }
}

/// Rank of a row-major `rows x cols` block of reduced values; the input is copied.
pub fn rank_of_rows(m: Modulus, data: &[u64], rows: usize, cols: usize) -> usize {
    let mut a = data.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = m.inv(a[rank * cols + c]).expect("pivot is nonzero");
        for i in rank + 1..rows {
            let f = m.mul(a[i * cols + c], inv);
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let t = m.mul(f, a[rank * cols + j]);
                a[i * cols + j] = m.sub(a[i * cols + j], t);
            }
        }
        rank += 1;
    }
    rank
}

impl Serialize for FieldMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldMatrix", 2)?;
        st.serialize_field("p", &self.modulus)?;
        st.serialize_field("rows", &self.to_rows())?;
        st.end()
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix(p={}, {:?})", self.modulus, self.to_rows())
    }
}
