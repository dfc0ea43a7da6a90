use serde::Serialize;

use crate::exactalg::{FieldMatrix, Modulus};

use super::vector::PlueckerVector;
use super::PlueckerError;

/// Two square matrices of the same size over the same field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixPencil {
    x: FieldMatrix,
    y: FieldMatrix,
}

impl MatrixPencil {
    pub fn new(x: FieldMatrix, y: FieldMatrix) -> Result<Self, PlueckerError> {
        if !x.is_square() || x.shape() != y.shape() {
            return Err(PlueckerError::Shape(x.shape(), y.shape()));
        }
        if x.modulus() != y.modulus() {
            return Err(crate::exactalg::AlgebraError::ModulusMismatch(
                x.modulus().get(),
                y.modulus().get(),
            )
            .into());
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &FieldMatrix {
        &self.x
    }

    pub fn y(&self) -> &FieldMatrix {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn modulus(&self) -> Modulus {
        self.x.modulus()
    }

    /// The `2 x n^2` matrix with rows `X` and `Y` flattened row-major.
    pub fn flattening(&self) -> FieldMatrix {
        let values = [self.x.values(), self.y.values()].concat();
        FieldMatrix::from_values(self.modulus(), 2, values.len() / 2, values).expect("two rows")
    }

    /// True when every `det (X_{ij} X_{hk})` vanishes, i.e. the flattening
    /// has rank at most one.
    pub fn in_c0(&self) -> bool {
        self.flattening().rank() <= 1
    }

    pub fn commutes(&self) -> bool {
        FieldMatrix::commutator(&self.x, &self.y)
            .expect("same shape")
            .is_zero()
    }

    /// `(aX + bY, cX + dY)` for `g = [[a, b], [c, d]]`.
    pub fn gl2_act(&self, g: &FieldMatrix) -> Result<Self, PlueckerError> {
        if g.shape() != (2, 2) {
            return Err(PlueckerError::NotTwoByTwo(g.shape()));
        }
        if g.modulus() != self.modulus() {
            return Err(crate::exactalg::AlgebraError::ModulusMismatch(
                g.modulus().get(),
                self.modulus().get(),
            )
            .into());
        }
        if g.rank() < 2 {
            return Err(PlueckerError::Singular);
        }
        let combo = |a: u64, b: u64| {
            self.x
                .scale(a as i64)
                .add(&self.y.scale(b as i64))
                .expect("same shape")
        };
        Ok(Self {
            x: combo(g.value(0, 0), g.value(0, 1)),
            y: combo(g.value(1, 0), g.value(1, 1)),
        })
    }
}

/// Plücker coordinates of the plane spanned by the pencil.
pub fn gamma(p: &MatrixPencil) -> Result<PlueckerVector, PlueckerError> {
    let v = plane_coordinates(p);
    if v.is_zero() {
        return Err(PlueckerError::Degenerate);
    }
    Ok(v)
}

fn plane_coordinates(p: &MatrixPencil) -> PlueckerVector {
    let m = p.modulus();
    let (x, y) = (p.x.values(), p.y.values());
    let big_n = x.len();
    let mut coords = Vec::with_capacity(big_n * big_n.saturating_sub(1) / 2);
    for a in 0..big_n {
        for b in a + 1..big_n {
            coords.push(m.sub(m.mul(x[a], y[b]), m.mul(y[a], x[b])));
        }
    }
    PlueckerVector::from_coords(p.n(), m, coords)
}

/// Whether two pencils span the same plane.
///
/// Compares row spaces of the flattenings and, independently, the normalized
/// Plücker coordinates; a disagreement is reported as an error.
pub fn same_fiber(p1: &MatrixPencil, p2: &MatrixPencil) -> Result<bool, PlueckerError> {
    if p1.n() != p2.n() {
        return Err(PlueckerError::Shape(p1.x.shape(), p2.x.shape()));
    }
    let g1 = gamma(p1)?;
    let g2 = gamma(p2)?;
    let stacked = FieldMatrix::from_values(
        p1.modulus(),
        4,
        p1.n() * p1.n(),
        [p1.x.values(), p1.y.values(), p2.x.values(), p2.y.values()].concat(),
    )?;
    let by_rows = stacked.rank() == 2;
    let by_coords = g1.projectively_equal(&g2);
    if by_rows != by_coords {
        return Err(PlueckerError::FiberTestsDisagree);
    }
    Ok(by_rows)
}
