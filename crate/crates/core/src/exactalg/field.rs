//! Prime-field scalars.
//!
//! A [`Modulus`] is a validated prime `2 <= p <= 2^31 - 1`. Residues are kept
//! as `u64` in `[0, p)`, so any product of two residues fits in 64 bits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Largest supported modulus (the Mersenne prime 2^31 - 1).
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// A prime modulus, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if (2..=MAX_MODULUS).contains(&p) && is_prime(p) {
            Ok(Self(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        if a % self.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.0 - 2))
        }
    }

    pub fn element(self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: self.reduce(v),
            modulus: self,
        }
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Modulus::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division; moduli never exceed 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A residue together with its modulus.
///
/// Arithmetic between elements of different fields is a programming error and
/// panics; the matrix and polynomial layers check moduli and return
/// [`AlgebraError::ModulusMismatch`] instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u64,
    modulus: Modulus,
}

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        modulus.element(value)
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self { value: 0, modulus }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self {
            value: 1 % modulus.get(),
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        self.modulus.inv(self.value).map(|value| Self {
            value,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, exp: u64) -> Self {
        Self {
            value: self.modulus.pow(self.value, exp),
            modulus: self.modulus,
        }
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(self) -> i64 {
        let p = self.modulus.get();
        if self.value > p / 2 {
            self.value as i64 - p as i64
        } else {
            self.value as i64
        }
    }

    #[inline]
    fn same_field(self, other: Self) -> Modulus {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic between different prime fields"
        );
        self.modulus
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let m = self.same_field(rhs);
        Self {
            value: m.add(self.value, rhs.value),
            modulus: m,
        }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let m = self.same_field(rhs);
        Self {
            value: m.sub(self.value, rhs.value),
            modulus: m,
        }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let m = self.same_field(rhs);
        Self {
            value: m.mul(self.value, rhs.value),
            modulus: m,
        }
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}
