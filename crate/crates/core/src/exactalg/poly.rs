//! Univariate polynomials over a prime field.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::field::{Modulus, PrimeFieldElement};
use super::matrix::FieldMatrix;
use super::AlgebraError;

/// Coefficients lowest degree first with no trailing zeros, so the zero
/// polynomial has an empty coefficient vector and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldPolynomial {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

/// Result of [`FieldPolynomial::xgcd`]: `u*f + v*g = gcd`, `gcd` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xgcd {
    pub gcd: FieldPolynomial,
    pub u: FieldPolynomial,
    pub v: FieldPolynomial,
}

impl FieldPolynomial {
    pub fn zero(modulus: Modulus) -> Self {
        Self {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn constant(modulus: Modulus, c: i64) -> Self {
        Self::from_coeffs(modulus, &[c])
    }

    /// The indeterminate `t`.
    pub fn t(modulus: Modulus) -> Self {
        Self::from_coeffs(modulus, &[0, 1])
    }

    pub fn from_coeffs(modulus: Modulus, coeffs: &[i64]) -> Self {
        Self::from_values(modulus, coeffs.iter().map(|&c| modulus.reduce(c)).collect())
    }

    fn from_values(modulus: Modulus, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    /// `(t - root)^exp`.
    pub fn linear_power(modulus: Modulus, root: u64, exp: u32) -> Self {
        let factor = Self::from_values(modulus, vec![modulus.neg(root % modulus.get()), 1]);
        let mut acc = Self::one(modulus);
        for _ in 0..exp {
            acc = acc.mul(&factor).expect("same modulus");
        }
        acc
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> PrimeFieldElement {
        self.modulus
            .element(self.coeffs.get(k).copied().unwrap_or(0) as i64)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.modulus != other.modulus {
            return Err(AlgebraError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|k| {
                m.add(
                    self.coeffs.get(k).copied().unwrap_or(0),
                    other.coeffs.get(k).copied().unwrap_or(0),
                )
            })
            .collect();
        Ok(Self::from_values(m, c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        Self::from_values(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    fn scale_value(&self, c: u64) -> Self {
        let m = self.modulus;
        Self::from_values(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.modulus));
        }
        let m = self.modulus;
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = m.add(c[i + j], m.mul(a, b));
            }
        }
        Ok(Self::from_values(m, c))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let m = self.modulus;
        let lead_inv = m.inv(divisor.coeffs[dd]).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((Self::zero(m), self.clone()));
        };
        let mut quot = vec![0; sd - dd + 1];
        for k in (dd..=sd).rev() {
            let c = m.mul(rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = m.sub(rem[idx], m.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_values(m, quot), Self::from_values(m, rem)))
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale_value(self.modulus.inv(lc).expect("nonzero")),
        }
    }

    /// Extended Euclid. The gcd is monic and `u*f + v*g = gcd`.
    pub fn xgcd(f: &Self, g: &Self) -> Result<Xgcd, AlgebraError> {
        f.check(g)?;
        if f.is_zero() && g.is_zero() {
            return Err(AlgebraError::ZeroGcd);
        }
        let m = f.modulus;
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut u0, mut u1) = (Self::one(m), Self::zero(m));
        let (mut v0, mut v1) = (Self::zero(m), Self::one(m));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let u2 = u0.sub(&q.mul(&u1)?)?;
            let v2 = v0.sub(&q.mul(&v1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        let inv = m.inv(r0.leading().expect("gcd is nonzero")).expect("nonzero");
        Ok(Xgcd {
            gcd: r0.scale_value(inv),
            u: u0.scale_value(inv),
            v: v0.scale_value(inv),
        })
    }

    pub fn eval(&self, at: u64) -> u64 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, at), c))
    }

    /// Horner evaluation at a square matrix; the zero polynomial gives the zero matrix.
    pub fn eval_matrix(&self, x: &FieldMatrix) -> Result<FieldMatrix, AlgebraError> {
        if !x.is_square() {
            return Err(AlgebraError::NotSquare(x.shape()));
        }
        if x.modulus() != self.modulus {
            return Err(AlgebraError::ModulusMismatch(
                self.modulus.get(),
                x.modulus().get(),
            ));
        }
        let n = x.rows();
        let mut acc = FieldMatrix::zeros(self.modulus, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mat_mul(x)?.add_scalar(c as i64)?;
        }
        Ok(acc)
    }
}

impl Serialize for FieldPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldPolynomial", 2)?;
        st.serialize_field("p", &self.modulus)?;
        st.serialize_field("coefficients", &self.coeffs)?;
        st.end()
    }
}

impl fmt::Debug for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPolynomial(p={}, {:?})", self.modulus, self.coeffs)
    }
}

impl fmt::Display for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c == 1 => write!(f, "t^{k}")?,
                _ => write!(f, "{c}t^{k}")?,
            }
        }
        Ok(())
    }
}
