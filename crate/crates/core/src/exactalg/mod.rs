//! Exact arithmetic: prime-field scalars, dense matrices and univariate
//! polynomials. Everything else in the crate is built on this layer.

mod field;
mod matrix;
mod poly;

pub use field::{is_prime, Modulus, PrimeFieldElement, MAX_MODULUS};
pub use matrix::{rank_of_rows, FieldMatrix};
pub use poly::{FieldPolynomial, Xgcd};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus (need a prime in [2, 2^31 - 1])")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("polynomial division by zero")]
    DivisionByZero,
}
