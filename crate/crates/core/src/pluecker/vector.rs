use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactalg::{FieldMatrix, Modulus};

/// Plücker coordinates of a 2-plane in `K^{n^2}`.
///
/// Matrix positions are numbered row-major, `a = i*n + j`. Only pairs `a < b`
/// are stored, in lexicographic order; [`get`](Self::get) reads the swapped
/// pair with a sign and the diagonal as zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlueckerVector {
    n: usize,
    modulus: Modulus,
    coords: Vec<u64>,
}

/// Index of the stored pair `a < b` among `N = n^2` positions.
#[inline]
fn pair_index(big_n: usize, a: usize, b: usize) -> usize {
    a * big_n - a * (a + 1) / 2 + (b - a - 1)
}

impl PlueckerVector {
    /// Wraps stored coordinates; `coords.len()` must be `N(N-1)/2`, `N = n^2`.
    pub fn from_coords(n: usize, modulus: Modulus, coords: Vec<u64>) -> Self {
        let big_n = n * n;
        assert_eq!(coords.len(), big_n * big_n.saturating_sub(1) / 2, "coordinate count");
        let coords = coords.into_iter().map(|c| c % modulus.get()).collect();
        Self { n, modulus, coords }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Stored coordinates, `a < b` in lexicographic order.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `p_{a,b}` for flat positions `a`, `b`.
    pub fn get(&self, a: usize, b: usize) -> u64 {
        let big_n = self.n * self.n;
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.coords[pair_index(big_n, a, b)],
            std::cmp::Ordering::Greater => self.modulus.neg(self.coords[pair_index(big_n, b, a)]),
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// `p_{(i,j)(h,k)}` with 0-based matrix positions.
    pub fn at(&self, (i, j): (usize, usize), (h, k): (usize, usize)) -> u64 {
        self.get(i * self.n + j, h * self.n + k)
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        Self {
            n: self.n,
            modulus: m,
            coords: self.coords.iter().map(|&v| m.mul(v, c)).collect(),
        }
    }

    /// Scaled so the first nonzero stored coordinate is 1. The zero vector is
    /// returned unchanged.
    pub fn normalized(&self) -> Self {
        match self.coords.iter().find(|&&c| c != 0) {
            Some(&lead) => self.scale(self.modulus.inv(lead).expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.n == other.n
            && self.modulus == other.modulus
            && !self.is_zero()
            && self.normalized() == other.normalized()
    }

    /// Entry `(i, j)` is `Σ_k p_{(i,k)(k,j)}`, which for the coordinates of a
    /// pencil is the `(i, j)` entry of its commutator.
    pub fn image_equation_residuals(&self) -> FieldMatrix {
        let (n, m) = (self.n, self.modulus);
        let mut out = FieldMatrix::zeros(m, n, n);
        for i in 0..n {
            for j in 0..n {
                let r = (0..n).fold(0, |acc, k| m.add(acc, self.at((i, k), (k, j))));
                out.set(i, j, r as i64);
            }
        }
        out
    }

    /// Nonzero stored entries as `((i, j), (h, k), value)`, 0-based.
    pub fn nonzero_entries(&self) -> Vec<((usize, usize), (usize, usize), u64)> {
        let big_n = self.n * self.n;
        let mut out = Vec::new();
        for a in 0..big_n {
            for b in a + 1..big_n {
                let v = self.coords[pair_index(big_n, a, b)];
                if v != 0 {
                    out.push(((a / self.n, a % self.n), (b / self.n, b % self.n), v));
                }
            }
        }
        out
    }
}

#[derive(Serialize)]
struct Entry {
    a: [usize; 2],
    b: [usize; 2],
    v: u64,
}

impl Serialize for PlueckerVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coords: Vec<Entry> = self
            .nonzero_entries()
            .into_iter()
            .map(|((i, j), (h, k), v)| Entry {
                a: [i + 1, j + 1],
                b: [h + 1, k + 1],
                v,
            })
            .collect();
        let mut st = s.serialize_struct("PlueckerVector", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn pair_index_is_dense_and_ordered() {
        for big_n in 1..=16 {
            let mut expected = 0;
            for a in 0..big_n {
                for b in a + 1..big_n {
                    assert_eq!(pair_index(big_n, a, b), expected);
                    expected += 1;
                }
            }
        }
    }

    #[test]
    fn antisymmetric_reads() {
        let v = PlueckerVector::from_coords(2, f(5), vec![1, 2, 3, 4, 0, 1]);
        assert_eq!(v.get(0, 1), 1);
        assert_eq!(v.get(1, 0), 4);
        assert_eq!(v.get(2, 2), 0);
        assert_eq!(v.at((1, 0), (0, 1)), 1);
    }

    #[test]
    fn normalization() {
        let v = PlueckerVector::from_coords(2, f(5), vec![0, 2, 4, 0, 0, 1]);
        assert_eq!(v.normalized().coords(), &[0, 1, 2, 0, 0, 3]);
        assert!(v.projectively_equal(&v.scale(3)));
        let zero = PlueckerVector::from_coords(2, f(5), vec![0; 6]);
        assert!(!zero.projectively_equal(&zero));
    }

    #[test]
    fn json_lists_nonzero_entries_one_based() {
        let v = PlueckerVector::from_coords(2, f(5), vec![4, 0, 0, 0, 1, 0]);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"n":2,"coords":[{"a":[1,1],"b":[1,2],"v":4},{"a":[1,2],"b":[2,2],"v":1}]}"#
        );
    }
}
