//! Dense matrix helpers: induced norms, conditioning, solves, null spaces.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::space::{dnorm, NormKind};

/// Rayleigh-quotient stall tolerance (relative) for the L2 power iteration.
pub const POWER_TOL: f64 = 1e-12;
/// Iteration cap per start vector for the L2 power iteration.
pub const POWER_MAX_ITER: usize = 10_000;

/// Condition-number ceiling beyond which a matrix is treated as singular.
pub const COND_LIMIT: f64 = 1e12;

/// Induced operator norm of `a` together with a unit vector attaining it.
pub fn induced_norm_with_witness(a: &DMatrix<f64>, kind: NormKind) -> Result<(f64, DVector<f64>)> {
    let n = a.ncols();
    if n == 0 {
        return Ok((0.0, DVector::zeros(0)));
    }
    match kind {
        NormKind::L1 => {
            let (j, s) = a
                .column_iter()
                .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
                .enumerate()
                .fold((0, -1.0), |best, (j, s)| if s > best.1 { (j, s) } else { best });
            let mut e = DVector::zeros(n);
            e[j] = 1.0;
            Ok((s, e))
        }
        NormKind::LInf => {
            let (i, s) = a
                .row_iter()
                .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
                .enumerate()
                .fold((0, -1.0), |best, (i, s)| if s > best.1 { (i, s) } else { best });
            let w = DVector::from_iterator(
                n,
                a.row(i).iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }),
            );
            Ok((s, w))
        }
        NormKind::L2 => spectral_norm(a),
    }
}

pub fn induced_norm(a: &DMatrix<f64>, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::L2 => spectral_norm(a).map(|(s, _)| s),
        _ => induced_norm_with_witness(a, kind).map(|(s, _)| s),
    }
}

/// Largest singular value by power iteration on `AᵀA`.
///
/// Starts from the normalized all-ones vector; if that fails to settle (or
/// lands in the kernel of a nonzero matrix) it restarts once from the
/// alternating-sign vector. The result is finally compared against the
/// largest column norm, which is a lower bound for `σ_max`; a start vector
/// orthogonal to the dominant singular subspace is caught there and rerun
/// from that column's basis vector. A dense symmetric eigensolve of `AᵀA`
/// backs the iteration up and wins whenever it finds a larger eigenvalue.
fn spectral_norm(a: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    let n = a.ncols();
    let (col, col_norm) = a
        .column_iter()
        .map(|c| c.norm())
        .enumerate()
        .fold((0, 0.0), |best, (j, s)| if s > best.1 { (j, s) } else { best });
    if col_norm == 0.0 {
        let mut e = DVector::zeros(n);
        e[0] = 1.0;
        return Ok((0.0, e));
    }
    let ata = a.transpose() * a;

    let ones = DVector::from_element(n, 1.0);
    let alternating = DVector::from_fn(n, |i, _| if i % 2 == 0 { 1.0 } else { -1.0 });
    let mut column = DVector::zeros(n);
    column[col] = 1.0;

    let mut best = None;
    for start in [ones, alternating] {
        if let Some((lambda, v)) = power_iterate(&ata, start) {
            if lambda > 0.0 {
                best = Some((lambda, v));
                break;
            }
        }
    }
    let guarded = match best {
        Some((lambda, v)) if lambda.sqrt() >= col_norm * (1.0 - 1e-12) => Some((lambda, v)),
        other => match (other, power_iterate(&ata, column)) {
            (Some(a), Some(b)) => Some(if b.0 > a.0 { b } else { a }),
            (a, b) => a.or(b),
        },
    };
    let (lambda, v) = match (guarded, dominant_eigenpair(&ata)) {
        (Some(p), Some(e)) if e.0 <= p.0 * (1.0 + 1e-14) => p,
        (_, Some(e)) => e,
        (Some(p), None) => p,
        (None, None) => {
            return Err(Error::numerical(format!(
                "L2 power iteration did not settle within {POWER_MAX_ITER} iterations"
            )))
        }
    };
    Ok((lambda.sqrt().max(col_norm), v))
}

/// Largest eigenpair of a symmetric matrix by dense eigendecomposition.
fn dominant_eigenpair(sym: &DMatrix<f64>) -> Option<(f64, DVector<f64>)> {
    let eig = nalgebra::SymmetricEigen::try_new(sym.clone(), f64::EPSILON, 0)?;
    let (i, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, &f64)>, (i, l)| match best {
            Some((_, b)) if b >= l => best,
            _ => Some((i, l)),
        })?;
    Some((lambda, eig.eigenvectors.column(i).into_owned()))
}

fn power_iterate(ata: &DMatrix<f64>, start: DVector<f64>) -> Option<(f64, DVector<f64>)> {
    let mut v = &start / start.norm();
    let mut lambda = v.dot(&(ata * &v));
    for _ in 0..POWER_MAX_ITER {
        let w = ata * &v;
        let nw = w.norm();
        if nw == 0.0 {
            return Some((0.0, v));
        }
        v = w / nw;
        let next = v.dot(&(ata * &v));
        if (next - lambda).abs() <= POWER_TOL * next.abs() {
            return Some((next, v));
        }
        lambda = next;
    }
    None
}

/// 2-norm condition number from the singular values; infinite when singular.
pub fn condition_number(a: &DMatrix<f64>) -> f64 {
    if a.nrows() == 0 {
        return 1.0;
    }
    let sv = a.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 || !min.is_finite() {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Solves `a x = b` by LU elimination, refusing ill-conditioned systems.
pub fn solve_guarded(a: &DMatrix<f64>, b: &DVector<f64>) -> std::result::Result<DVector<f64>, f64> {
    let cond = condition_number(a);
    if !(cond <= COND_LIMIT) {
        return Err(cond);
    }
    a.clone().lu().solve(b).ok_or(cond)
}

/// Orthonormal basis (as columns) of the null space of `a`.
pub fn null_space(a: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let n = a.ncols();
    // pad to square so the SVD exposes every right singular vector
    let mut sq = DMatrix::zeros(a.nrows().max(n), n);
    sq.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    let cut = rel_tol * smax.max(1.0);
    let cols: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cut)
        .map(|(i, _)| vt.row(i).transpose())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Orthonormal basis of the orthogonal complement of the column span of
/// `basis`, built by Gram–Schmidt over the standard basis vectors in order.
pub fn orthogonal_complement(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let n = basis.nrows();
    let mut ortho: Vec<DVector<f64>> = Vec::with_capacity(n);
    let push = |mut v: DVector<f64>, ortho: &mut Vec<DVector<f64>>| -> bool {
        let original = v.norm();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for q in ortho.iter() {
                let c = q.dot(&v);
                v.axpy(-c, q, 1.0);
            }
        }
        let nv = v.norm();
        if nv > 1e-10 * original.max(1.0) {
            ortho.push(v / nv);
            true
        } else {
            false
        }
    };
    for c in basis.column_iter() {
        push(c.into_owned(), &mut ortho);
    }
    let range_rank = ortho.len();
    let mut complement = Vec::with_capacity(n - range_rank);
    for i in 0..n {
        if ortho.len() == n {
            break;
        }
        let mut e = DVector::zeros(n);
        e[i] = 1.0;
        if push(e, &mut ortho) {
            complement.push(ortho.last().unwrap().clone());
        }
    }
    if complement.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&complement)
    }
}

pub(crate) fn vector_norm(v: &DVector<f64>, kind: NormKind) -> f64 {
    dnorm(v, kind)
}
