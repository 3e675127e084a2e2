use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::AffineOperator;
use crate::space::{NormKind, Vector};

/// Unique fixed point of `x ↦ Ax + b` by direct elimination of `(I − A)x = b`.
pub fn fixed_point_direct(op: &AffineOperator) -> Result<Vector> {
    let n = op.dim();
    let system = DMatrix::identity(n, n) - op.matrix();
    let x = linalg::solve_guarded(&system, op.offset())
        .map_err(|condition| Error::NonContractive { condition })?;
    let x = Vector::from_dvector(x)?;
    let residual = (&op.apply(&x)? - &x).norm(NormKind::L2);
    if residual > 1e-10 * (1.0 + x.norm(NormKind::L2)) {
        return Err(Error::numerical(format!(
            "fixed-point residual {residual:.3e} exceeds tolerance"
        )));
    }
    Ok(x)
}
