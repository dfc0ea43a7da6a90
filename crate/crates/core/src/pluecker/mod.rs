//! Pencils of matrices and their Plücker coordinates.
//!
//! A pair `(X, Y)` of `n x n` matrices spans a 2-plane in `K^{n^2}` unless the
//! flattened rows are dependent (the degenerate locus `C0`). The coordinates
//! `p_{(i,j)(h,k)} = x_{ij} y_{hk} - y_{ij} x_{hk}` of that plane turn the
//! commutator equations into linear ones, and `GL(2)` acts on pencils with
//! the plane as a complete invariant.

mod pencil;
mod vector;
mod verify;

pub use pencil::{gamma, same_fiber, MatrixPencil};
pub use vector::PlueckerVector;
pub use verify::{verify_example_e, verify_gamma4_image, ExampleEReport, Gamma4Report};

use thiserror::Error;

use crate::exactalg::AlgebraError;
use crate::pointcount::CountError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlueckerError {
    #[error("pencil lies in the degenerate locus C0")]
    Degenerate,
    #[error("pencil needs two square matrices of one shape, got {0:?} and {1:?}")]
    Shape((usize, usize), (usize, usize)),
    #[error("group element must be 2x2, got {0:?}")]
    NotTwoByTwo((usize, usize)),
    #[error("group element is singular")]
    Singular,
    #[error("row-space and projective fiber tests disagree")]
    FiberTestsDisagree,
    #[error("only F_2 and F_3 are supported, got F_{0}")]
    UnsupportedField(u64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Count(#[from] CountError),
}
