//! Seeded generators for randomized scenarios.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg;
use crate::operator::AffineOperator;
use crate::projector::{oblique_projector, ObliqueProjector};
use crate::space::{NormKind, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for sub-task `stream` of a seeded run.
pub fn sub_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Entries uniform in `[-scale, scale]`.
pub fn random_vector<R: Rng>(rng: &mut R, dim: usize, scale: f64) -> Vector {
    let v = DVector::from_fn(dim, |_, _| scale * rng.random_range(-1.0..=1.0));
    Vector::from_dvector(v).expect("bounded entries are finite")
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

/// Random unit vector in the given norm.
pub fn random_unit_vector<R: Rng>(rng: &mut R, dim: usize, kind: NormKind) -> Vector {
    loop {
        let v = random_vector(rng, dim, 1.0);
        let n = v.norm(kind);
        if n > 1e-3 {
            return v.scale(1.0 / n);
        }
    }
}

/// Affine operator whose linear part has induced norm `bound · u`, `u ∈ [0.5, 1)`.
pub fn random_contraction<R: Rng>(
    rng: &mut R,
    dim: usize,
    bound: f64,
    kind: NormKind,
    offset_scale: f64,
) -> AffineOperator {
    let mut matrix = random_matrix(rng, dim, dim);
    let offset = DVector::from_fn(dim, |_, _| offset_scale * rng.random_range(-1.0..1.0));
    let u: f64 = rng.random_range(0.5..1.0);
    let nu = linalg::induced_norm(&matrix, kind).unwrap_or(0.0);
    if nu > 0.0 {
        matrix *= bound * u / nu;
    }
    AffineOperator::new(matrix, offset).expect("finite by construction")
}

/// Random orthogonal matrix from the QR factors of a uniform matrix.
pub fn random_orthogonal<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    loop {
        let m = random_matrix(rng, n, n);
        if linalg::condition_number(&m) < 1e6 {
            return m.qr().q();
        }
    }
}

fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut q = DMatrix::zeros(n, n);
    for (i, &j) in idx.iter().enumerate() {
        q[(i, j)] = 1.0;
    }
    q
}

/// Random projector of the given rank with `‖P‖ ≤ mu_max` in `kind`.
///
/// Built as `Q [[I, X], [0, 0]] Qᵀ` where `Q` is orthogonal (L2) or a
/// permutation (L1, L∞), both of which preserve the induced norm; `X` is
/// shrunk until the norm bound holds. `mu_max` must be at least 1.
pub fn random_projector<R: Rng>(
    rng: &mut R,
    dim: usize,
    rank: usize,
    mu_max: f64,
    kind: NormKind,
) -> Result<ObliqueProjector> {
    assert!(rank <= dim && mu_max >= 1.0);
    let s = dim - rank;
    let mut x = random_matrix(rng, rank, s) * rng.random_range(0.0..2.0);
    let block = |x: &DMatrix<f64>| {
        let mut p = DMatrix::zeros(dim, dim);
        p.view_mut((0, 0), (rank, rank)).fill_with_identity();
        p.view_mut((0, rank), (rank, s)).copy_from(x);
        p
    };
    while linalg::induced_norm(&block(&x), kind)? > mu_max {
        x *= 0.5;
    }
    let q = match kind {
        NormKind::L2 => random_orthogonal(rng, dim),
        _ => random_permutation(rng, dim),
    };
    let mut range = DMatrix::zeros(dim, rank);
    range.view_mut((0, 0), (rank, rank)).fill_with_identity();
    let mut kernel = DMatrix::zeros(dim, s);
    kernel.view_mut((0, 0), (rank, s)).copy_from(&(-&x));
    kernel.view_mut((rank, 0), (s, s)).fill_with_identity();
    oblique_projector(&q * range, &q * kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::{is_projector, IDEMPOTENCY_TOL};

    #[test]
    fn random_projectors_respect_bounds() {
        let mut r = rng(3);
        for kind in NormKind::ALL {
            for dim in [2usize, 4, 8, 16] {
                for rank in [1, dim / 2, dim] {
                    let p = random_projector(&mut r, dim, rank, 2.0, kind).unwrap();
                    assert!(is_projector(p.operator(), IDEMPOTENCY_TOL).unwrap());
                    let mu = p.norm(kind).unwrap();
                    assert!(mu <= 2.0 + 1e-9, "{kind} {dim} {rank}: {mu}");
                    assert!(mu >= 1.0 - 1e-9);
                    assert_eq!(p.rank(), rank);
                }
            }
        }
    }

    #[test]
    fn contractions_have_requested_norm() {
        let mut r = rng(5);
        for kind in NormKind::ALL {
            let t = random_contraction(&mut r, 6, 0.9, kind, 1.0);
            let nu = t.norm(kind).unwrap();
            assert!((0.45..=0.9 + 1e-9).contains(&nu));
        }
    }
}
