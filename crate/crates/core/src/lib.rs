//! Exact computations around varieties of commuting pairs of (strictly)
//! upper triangular matrices.
//!
//! * [`exactalg`]: prime fields, matrices, polynomials.
//! * [`bounds`]: block compositions, equation counts and dimension-bound
//!   certificates, plus the component formula for `{AB = 0}`.
//! * [`pointcount`]: budgeted exhaustive point counts over small prime fields
//!   and dimension estimates from them.
//! * [`spectral`]: minimal polynomials and spectral projectors of triangular
//!   matrices, and the induced block decomposition of commuting pairs.
//! * [`pluecker`]: the map from non-degenerate pencils to Plücker coordinates
//!   of codimension-2 subspaces.

pub mod bounds;
pub mod exactalg;
pub mod pluecker;
pub mod pointcount;
pub mod spectral;

pub use exactalg::{AlgebraError, FieldMatrix, FieldPolynomial, Modulus, PrimeFieldElement};
