//! Oblique and orthogonal projectors specified by explicit range and kernel bases.

use std::borrow::Cow;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, COND_LIMIT};
use crate::operator::{decay, AffineOperator, TailRule};
use crate::space::{NormKind, Vector};

/// Idempotency tolerance applied to every constructed projector.
pub const IDEMPOTENCY_TOL: f64 = 1e-10;

/// Projector `P` with `Im P = span(range_basis)` and `Ker P = span(kernel_basis)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObliqueProjector {
    range_basis: DMatrix<f64>,
    kernel_basis: DMatrix<f64>,
    realized: AffineOperator,
}

impl ObliqueProjector {
    pub fn dim(&self) -> usize {
        self.realized.dim()
    }

    pub fn rank(&self) -> usize {
        self.range_basis.ncols()
    }

    pub fn range_basis(&self) -> &DMatrix<f64> {
        &self.range_basis
    }

    pub fn kernel_basis(&self) -> &DMatrix<f64> {
        &self.kernel_basis
    }

    pub fn operator(&self) -> &AffineOperator {
        &self.realized
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        self.realized.matrix()
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        self.realized.apply(x)
    }

    pub fn norm(&self, kind: NormKind) -> Result<f64> {
        self.realized.norm(kind)
    }

    /// `I − P`: range and kernel swap roles.
    pub fn complement(&self) -> Result<ObliqueProjector> {
        oblique_projector(self.kernel_basis.clone(), self.range_basis.clone())
    }

    pub fn identity(dim: usize) -> Self {
        ObliqueProjector {
            range_basis: DMatrix::identity(dim, dim),
            kernel_basis: DMatrix::zeros(dim, 0),
            realized: AffineOperator::identity(dim),
        }
    }
}

/// `P = [M 0]·[M | N]⁻¹`.
pub fn oblique_projector(range_basis: DMatrix<f64>, kernel_basis: DMatrix<f64>) -> Result<ObliqueProjector> {
    let n = range_basis.nrows();
    if kernel_basis.nrows() != n {
        return Err(Error::dimension(n, kernel_basis.nrows()));
    }
    let r = range_basis.ncols();
    if r + kernel_basis.ncols() != n {
        return Err(Error::dimension(n, r + kernel_basis.ncols()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument {
            name: "range_basis",
            reason: "space dimension must be positive".into(),
        });
    }
    if range_basis.iter().chain(kernel_basis.iter()).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateSplit {
            condition: f64::INFINITY,
        });
    }
    let mut split = DMatrix::zeros(n, n);
    split.view_mut((0, 0), (n, r)).copy_from(&range_basis);
    split.view_mut((0, r), (n, n - r)).copy_from(&kernel_basis);
    let condition = linalg::condition_number(&split);
    if !(condition <= COND_LIMIT) {
        return Err(Error::DegenerateSplit { condition });
    }
    let inverse = split
        .clone()
        .lu()
        .try_inverse()
        .ok_or(Error::DegenerateSplit { condition })?;
    let mut keep = DMatrix::zeros(n, n);
    keep.view_mut((0, 0), (n, r)).copy_from(&range_basis);
    let realized = AffineOperator::linear(keep * inverse)?;
    Ok(ObliqueProjector {
        range_basis,
        kernel_basis,
        realized,
    })
}

/// Projector onto `span(range_basis)` along its orthogonal complement.
pub fn orthogonal_projector(range_basis: DMatrix<f64>) -> Result<ObliqueProjector> {
    let r = range_basis.ncols();
    if r > 0 {
        let condition = linalg::condition_number(&range_basis);
        if !(condition <= COND_LIMIT) || range_basis.nrows() < r {
            return Err(Error::DegenerateSplit { condition });
        }
    }
    let kernel_basis = linalg::orthogonal_complement(&range_basis);
    oblique_projector(range_basis, kernel_basis)
}

/// True iff `‖P² − P‖_F ≤ tol` (Frobenius, which dominates the L2 operator norm).
pub fn is_projector(op: &AffineOperator, tol: f64) -> Result<bool> {
    if !op.is_linear() {
        return Err(Error::NotLinear);
    }
    let p = op.matrix();
    Ok((p * p - p).norm() <= tol)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProjectorSequenceKind {
    Constant(ObliqueProjector),
    Explicit {
        projectors: Vec<ObliqueProjector>,
        tail: TailRule,
    },
    Periodic(Vec<ObliqueProjector>),
    /// Bases move as `limit_basis + rate^k · delta`; every element is re-realized
    /// from its bases, so each `P_k` is an exact projector.
    Convergent {
        limit: ObliqueProjector,
        range_delta: DMatrix<f64>,
        kernel_delta: DMatrix<f64>,
        rate: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSequence {
    kind: ProjectorSequenceKind,
    dim: usize,
}

fn common_dim(ps: &[ObliqueProjector]) -> Result<usize> {
    let first = ps
        .first()
        .ok_or_else(|| Error::InvalidArgument {
            name: "projectors",
            reason: "projector list is empty".into(),
        })?
        .dim();
    if let Some(p) = ps.iter().find(|p| p.dim() != first) {
        return Err(Error::dimension(first, p.dim()));
    }
    Ok(first)
}

impl ProjectorSequence {
    pub fn constant(p: ObliqueProjector) -> Self {
        let dim = p.dim();
        ProjectorSequence {
            kind: ProjectorSequenceKind::Constant(p),
            dim,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::constant(ObliqueProjector::identity(dim))
    }

    pub fn periodic(ps: Vec<ObliqueProjector>) -> Result<Self> {
        let dim = common_dim(&ps)?;
        Ok(ProjectorSequence {
            kind: ProjectorSequenceKind::Periodic(ps),
            dim,
        })
    }

    pub fn explicit(projectors: Vec<ObliqueProjector>, tail: TailRule) -> Result<Self> {
        let dim = common_dim(&projectors)?;
        Ok(ProjectorSequence {
            kind: ProjectorSequenceKind::Explicit { projectors, tail },
            dim,
        })
    }

    pub fn convergent(
        limit: ObliqueProjector,
        range_delta: DMatrix<f64>,
        kernel_delta: DMatrix<f64>,
        rate: f64,
    ) -> Result<Self> {
        if range_delta.shape() != limit.range_basis.shape() {
            return Err(Error::dimension(limit.rank(), range_delta.ncols()));
        }
        if kernel_delta.shape() != limit.kernel_basis.shape() {
            return Err(Error::dimension(limit.dim() - limit.rank(), kernel_delta.ncols()));
        }
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::InvalidArgument {
                name: "rate",
                reason: format!("decay rate must lie in (0, 1), got {rate}"),
            });
        }
        let dim = limit.dim();
        Ok(ProjectorSequence {
            kind: ProjectorSequenceKind::Convergent {
                limit,
                range_delta,
                kernel_delta,
                rate,
            },
            dim,
        })
    }

    pub fn kind(&self) -> &ProjectorSequenceKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> Option<usize> {
        match &self.kind {
            ProjectorSequenceKind::Constant(_) => Some(1),
            ProjectorSequenceKind::Periodic(ps) => Some(ps.len()),
            _ => None,
        }
    }

    /// `P_k`. Convergent sequences can hit a degenerate split at small `k`.
    pub fn get(&self, k: usize) -> Result<Cow<'_, ObliqueProjector>> {
        Ok(match &self.kind {
            ProjectorSequenceKind::Constant(p) => Cow::Borrowed(p),
            ProjectorSequenceKind::Periodic(ps) => Cow::Borrowed(&ps[k % ps.len()]),
            ProjectorSequenceKind::Explicit { projectors, tail } => match tail {
                TailRule::HoldLast => Cow::Borrowed(&projectors[k.min(projectors.len() - 1)]),
                TailRule::Cycle => Cow::Borrowed(&projectors[k % projectors.len()]),
            },
            ProjectorSequenceKind::Convergent {
                limit,
                range_delta,
                kernel_delta,
                rate,
            } => {
                let w = decay(*rate, k);
                if w == 0.0 {
                    Cow::Borrowed(limit)
                } else {
                    Cow::Owned(oblique_projector(
                        &limit.range_basis + range_delta * w,
                        &limit.kernel_basis + kernel_delta * w,
                    )?)
                }
            }
        })
    }

    pub fn limit(&self) -> Option<ObliqueProjector> {
        fn all_equal(ps: &[ObliqueProjector]) -> Option<ObliqueProjector> {
            let first = ps.first()?;
            ps.iter()
                .all(|p| p.matrix() == first.matrix())
                .then(|| first.clone())
        }
        match &self.kind {
            ProjectorSequenceKind::Constant(p) => Some(p.clone()),
            ProjectorSequenceKind::Convergent { limit, .. } => Some(limit.clone()),
            ProjectorSequenceKind::Explicit { projectors, tail } => match tail {
                TailRule::HoldLast => projectors.last().cloned(),
                TailRule::Cycle => all_equal(projectors),
            },
            ProjectorSequenceKind::Periodic(ps) => all_equal(ps),
        }
    }

    /// `sup_k ‖P_k‖` over `0..horizon`.
    pub fn sup_norm(&self, horizon: usize, kind: NormKind) -> Result<f64> {
        let mut mu: f64 = 0.0;
        let span = match &self.kind {
            ProjectorSequenceKind::Constant(_) => 1,
            ProjectorSequenceKind::Periodic(ps) => ps.len().min(horizon.max(1)),
            _ => horizon.max(1),
        };
        for k in 0..span {
            mu = mu.max(self.get(k)?.norm(kind)?);
        }
        Ok(mu)
    }
}
