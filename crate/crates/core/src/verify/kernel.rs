//! Non-uniqueness of preimages under `P T` along its kernel.

use rand::Rng;

use crate::error::Result;
use crate::linalg::null_space;
use crate::projector::ObliqueProjector;
use crate::random::{random_vector, rng};
use crate::space::{distance, NormKind, Vector};
use crate::operator::AffineOperator;

use super::report::{anchors, ReportEntry, Tolerances, Witness};

pub const KERNEL_PREIMAGE: &str = "check_kernel_preimage_degeneracy";

const KERNEL_REL_TOL: f64 = 1e-10;
const BASE_POINTS: usize = 8;
const KERNEL_SAMPLES: usize = 8;

/// Kernel of the linear part of `P ∘ T`, columns orthonormal.
pub fn kernel_basis(p: &ObliqueProjector, t: &AffineOperator) -> Result<nalgebra::DMatrix<f64>> {
    let pt = p.operator().compose(t)?;
    Ok(null_space(pt.matrix(), KERNEL_REL_TOL))
}

/// For random `x` and `x_a` drawn from the kernel of `P T` (including `x_a = 0`),
/// `P T (x + x_a) = P T x` within the slack.
pub fn check_kernel_preimage_degeneracy(
    p: &ObliqueProjector,
    t: &AffineOperator,
    seed: u64,
    kind: NormKind,
    tol: &Tolerances,
) -> Result<ReportEntry> {
    let basis = kernel_basis(p, t)?;
    if basis.ncols() == 0 {
        return Ok(ReportEntry::inapplicable(
            KERNEL_PREIMAGE,
            anchors::KERNEL_PREIMAGE,
            "P T has full rank; its kernel is trivial".into(),
        ));
    }
    let pt = p.operator().compose(t)?;
    let mut r = rng(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut witness = Witness::new(0, &[]);
    let mut largest: f64 = 0.0;
    for i in 0..BASE_POINTS {
        let x = random_vector(&mut r, t.dim(), 1.0);
        let image = pt.apply(&x)?;
        for s in 0..=KERNEL_SAMPLES {
            let x_a = if s == 0 {
                Vector::zeros(t.dim())
            } else {
                let coeffs: Vec<f64> = (0..basis.ncols()).map(|_| r.random_range(-10.0..10.0)).collect();
                Vector::from_dvector(&basis * nalgebra::DVector::from_vec(coeffs))?
            };
            let d = distance(&pt.apply(&(&x + &x_a))?, &image, kind)?;
            largest = largest.max(d);
            let v = d - tol.slack;
            if v > worst {
                worst = v;
                witness = Witness::new(i, &[&x, &x_a]);
            }
        }
    }
    Ok(ReportEntry::judged(
        KERNEL_PREIMAGE,
        anchors::KERNEL_PREIMAGE,
        worst,
        witness,
        format!(
            "kernel dimension {} of {}, {} base points x {} kernel samples, max image difference {largest:.3e}",
            basis.ncols(),
            t.dim(),
            BASE_POINTS,
            KERNEL_SAMPLES + 1
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::{oblique_projector, orthogonal_projector};
    use crate::verify::Status;
    use nalgebra::DMatrix;

    #[test]
    fn first_axis_projector_has_second_axis_kernel() {
        let p = orthogonal_projector(DMatrix::from_column_slice(2, 1, &[1.0, 0.0])).unwrap();
        let t = AffineOperator::identity(2);
        let k = kernel_basis(&p, &t).unwrap();
        assert_eq!(k.ncols(), 1);
        assert!(k[(0, 0)].abs() < 1e-12);
        let x = Vector::new(vec![0.3, 0.7]).unwrap();
        let shifted = &x + &Vector::basis(2, 1);
        assert_eq!(p.apply(&shifted).unwrap(), p.apply(&x).unwrap());
        let e = check_kernel_preimage_degeneracy(&p, &t, 7, NormKind::L2, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass);
    }

    #[test]
    fn oblique_kernel_is_the_diagonal() {
        let p = oblique_projector(
            DMatrix::from_column_slice(2, 1, &[1.0, 0.0]),
            DMatrix::from_column_slice(2, 1, &[1.0, 1.0]),
        ).unwrap();
        let k = kernel_basis(&p, &AffineOperator::identity(2)).unwrap();
        assert_eq!(k.ncols(), 1);
        assert!((k[(0, 0)] - k[(1, 0)]).abs() < 1e-12);
        let e = check_kernel_preimage_degeneracy(&p, &AffineOperator::identity(2), 1, NormKind::LInf, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass, "{}", e.details);
    }

    #[test]
    fn full_rank_is_inapplicable() {
        let p = ObliqueProjector::identity(3);
        let e = check_kernel_preimage_degeneracy(&p, &AffineOperator::scaled_identity(3, 2.0), 1, NormKind::L2, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Inapplicable);
    }
}
