//! Affine operators `x ↦ Ax + b`, their compositions, and operator sequences.
//!
//! The contraction constant of an affine map in a given norm is the induced
//! norm of its linear part, so contractive (`K < 1`) and non-expansive
//! (`K ≤ 1`) maps are realized exactly by this class.

use std::borrow::Cow;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::space::{NormKind, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct AffineOperator {
    matrix: DMatrix<f64>,
    offset: DVector<f64>,
}

impl AffineOperator {
    pub fn new(matrix: DMatrix<f64>, offset: DVector<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::dimension(matrix.nrows(), matrix.ncols()));
        }
        if offset.len() != matrix.nrows() {
            return Err(Error::dimension(matrix.nrows(), offset.len()));
        }
        if matrix.iter().chain(offset.iter()).any(|v| !v.is_finite()) {
            return Err(Error::numerical("operator has non-finite entries"));
        }
        Ok(AffineOperator { matrix, offset })
    }

    pub fn linear(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, DVector::zeros(n))
    }

    /// Builds an operator from row-major rows and an offset.
    pub fn from_rows(rows: &[Vec<f64>], offset: &[f64]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::dimension(n, bad.len()));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::new(
            DMatrix::from_row_slice(n, n, &flat),
            DVector::from_column_slice(offset),
        )
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, alpha: f64) -> Self {
        AffineOperator {
            matrix: DMatrix::identity(dim, dim) * alpha,
            offset: DVector::zeros(dim),
        }
    }

    pub fn with_offset(mut self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim() {
            return Err(Error::dimension(self.dim(), offset.len()));
        }
        self.offset = DVector::from_column_slice(offset);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn offset(&self) -> &DVector<f64> {
        &self.offset
    }

    pub fn is_linear(&self) -> bool {
        self.offset.iter().all(|&v| v == 0.0)
    }

    /// `T x = A x + b`.
    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        Vector::from_dvector(&self.matrix * x.as_dvector() + &self.offset)
    }

    /// `self ∘ inner`: matrix `A_out A_in`, offset `A_out b_in + b_out`.
    pub fn compose(&self, inner: &AffineOperator) -> Result<AffineOperator> {
        if inner.dim() != self.dim() {
            return Err(Error::dimension(self.dim(), inner.dim()));
        }
        Ok(AffineOperator {
            matrix: &self.matrix * &inner.matrix,
            offset: &self.matrix * &inner.offset + &self.offset,
        })
    }

    /// Induced norm of the linear part; the offset does not enter.
    pub fn norm(&self, kind: NormKind) -> Result<f64> {
        linalg::induced_norm(&self.matrix, kind)
    }

    /// Induced norm together with a unit vector `x` with `‖Ax‖` equal to it.
    pub fn norm_witness(&self, kind: NormKind) -> Result<(f64, Vector)> {
        let (nu, v) = linalg::induced_norm_with_witness(&self.matrix, kind)?;
        Ok((nu, Vector::from_dvector(v)?))
    }

    /// `‖A − B‖ + ‖a − b‖`; bounds `sup_{‖x‖≤1} ‖Tx − Sx‖`.
    pub fn distance(&self, other: &AffineOperator, kind: NormKind) -> Result<f64> {
        if other.dim() != self.dim() {
            return Err(Error::dimension(self.dim(), other.dim()));
        }
        let dm = linalg::induced_norm(&(&self.matrix - &other.matrix), kind)?;
        let db = linalg::vector_norm(&(&self.offset - &other.offset), kind);
        Ok(dm + db)
    }

    /// `self + alpha · other`, on both matrix and offset.
    pub(crate) fn axpy(&self, alpha: f64, other: &AffineOperator) -> AffineOperator {
        AffineOperator {
            matrix: &self.matrix + &other.matrix * alpha,
            offset: &self.offset + &other.offset * alpha,
        }
    }
}

/// How an explicit operator list continues past its last element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailRule {
    /// Repeat the final operator forever; the sequence has that limit.
    HoldLast,
    /// Cycle through the list again.
    Cycle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomContractiveSpec {
    pub seed: u64,
    pub dim: usize,
    pub norm_bound: f64,
    pub norm_kind: NormKind,
    /// Offset entries are drawn uniformly from `[-offset_scale, offset_scale]`.
    pub offset_scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    Constant(AffineOperator),
    Explicit {
        ops: Vec<AffineOperator>,
        tail: TailRule,
    },
    Periodic(Vec<AffineOperator>),
    /// `T_k = limit + rate^k · perturbation`.
    Convergent {
        limit: AffineOperator,
        perturbation: AffineOperator,
        rate: f64,
    },
    RandomContractive(RandomContractiveSpec),
}

/// A rule producing `T_k` for every index `k ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSequence {
    kind: SequenceKind,
    dim: usize,
}

fn common_dim(ops: &[AffineOperator]) -> Result<usize> {
    let first = ops
        .first()
        .ok_or_else(|| Error::InvalidArgument {
            name: "ops",
            reason: "operator list is empty".into(),
        })?
        .dim();
    for op in ops {
        if op.dim() != first {
            return Err(Error::dimension(first, op.dim()));
        }
    }
    Ok(first)
}

impl OperatorSequence {
    pub fn constant(op: AffineOperator) -> Self {
        let dim = op.dim();
        OperatorSequence {
            kind: SequenceKind::Constant(op),
            dim,
        }
    }

    pub fn explicit(ops: Vec<AffineOperator>, tail: TailRule) -> Result<Self> {
        let dim = common_dim(&ops)?;
        Ok(OperatorSequence {
            kind: SequenceKind::Explicit { ops, tail },
            dim,
        })
    }

    pub fn periodic(ops: Vec<AffineOperator>) -> Result<Self> {
        let dim = common_dim(&ops)?;
        Ok(OperatorSequence {
            kind: SequenceKind::Periodic(ops),
            dim,
        })
    }

    pub fn convergent(limit: AffineOperator, perturbation: AffineOperator, rate: f64) -> Result<Self> {
        if perturbation.dim() != limit.dim() {
            return Err(Error::dimension(limit.dim(), perturbation.dim()));
        }
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::InvalidArgument {
                name: "rate",
                reason: format!("decay rate must lie in (0, 1), got {rate}"),
            });
        }
        let dim = limit.dim();
        Ok(OperatorSequence {
            kind: SequenceKind::Convergent {
                limit,
                perturbation,
                rate,
            },
            dim,
        })
    }

    pub fn random_contractive(spec: RandomContractiveSpec) -> Result<Self> {
        if !(spec.norm_bound > 0.0 && spec.norm_bound.is_finite()) {
            return Err(Error::InvalidArgument {
                name: "norm_bound",
                reason: format!("must be positive and finite, got {}", spec.norm_bound),
            });
        }
        if spec.dim == 0 {
            return Err(Error::InvalidArgument {
                name: "dim",
                reason: "must be positive".into(),
            });
        }
        let dim = spec.dim;
        Ok(OperatorSequence {
            kind: SequenceKind::RandomContractive(spec),
            dim,
        })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Period of the index pattern, when it repeats exactly.
    pub fn period(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Constant(_) => Some(1),
            SequenceKind::Periodic(ops) => Some(ops.len()),
            _ => None,
        }
    }

    /// The operator `T_k`.
    pub fn get(&self, k: usize) -> Cow<'_, AffineOperator> {
        match &self.kind {
            SequenceKind::Constant(op) => Cow::Borrowed(op),
            SequenceKind::Periodic(ops) => Cow::Borrowed(&ops[k % ops.len()]),
            SequenceKind::Explicit { ops, tail } => match tail {
                TailRule::HoldLast => Cow::Borrowed(&ops[k.min(ops.len() - 1)]),
                TailRule::Cycle => Cow::Borrowed(&ops[k % ops.len()]),
            },
            SequenceKind::Convergent {
                limit,
                perturbation,
                rate,
            } => Cow::Owned(limit.axpy(decay(*rate, k), perturbation)),
            SequenceKind::RandomContractive(spec) => Cow::Owned(random_operator(spec, k)),
        }
    }

    /// `lim T_k` when the sequence kind guarantees one.
    pub fn limit(&self) -> Option<AffineOperator> {
        match &self.kind {
            SequenceKind::Constant(op) => Some(op.clone()),
            SequenceKind::Convergent { limit, .. } => Some(limit.clone()),
            SequenceKind::Explicit { ops, tail } => match tail {
                TailRule::HoldLast => ops.last().cloned(),
                TailRule::Cycle => all_equal(ops),
            },
            SequenceKind::Periodic(ops) => all_equal(ops),
            SequenceKind::RandomContractive(_) => None,
        }
    }

    /// `T̂(end, start) = T_{end−1} ∘ … ∘ T_start`; the identity when `end == start`.
    pub fn composite(&self, start: usize, end: usize) -> Result<AffineOperator> {
        if end < start {
            return Err(Error::Range(format!(
                "composite end {end} precedes start {start}"
            )));
        }
        let mut acc = AffineOperator::identity(self.dim);
        for i in start..end {
            acc = self.get(i).compose(&acc)?;
        }
        Ok(acc)
    }
}

pub(crate) fn decay(rate: f64, k: usize) -> f64 {
    if k > i32::MAX as usize {
        0.0
    } else {
        rate.powi(k as i32)
    }
}

fn all_equal(ops: &[AffineOperator]) -> Option<AffineOperator> {
    let first = ops.first()?;
    ops.iter().all(|op| op == first).then(|| first.clone())
}

/// Deterministic in `(spec, k)`: each index draws from its own ChaCha stream.
fn random_operator(spec: &RandomContractiveSpec, k: usize) -> AffineOperator {
    let mut rng = crate::random::sub_rng(spec.seed, k as u64);
    crate::random::random_contraction(&mut rng, spec.dim, spec.norm_bound, spec.norm_kind, spec.offset_scale)
}

/// A finite composition `T_end ∘ … ∘ T_start` of consecutive sequence elements.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeStrip {
    pub ops: Vec<AffineOperator>,
    pub realized: AffineOperator,
    pub start_index: usize,
    pub end_index: usize,
}

impl CompositeStrip {
    pub fn norm(&self, kind: NormKind) -> Result<f64> {
        self.realized.norm(kind)
    }
}

/// Strip over `seq[j..=k]`, applied right to left.
pub fn strip(seq: &OperatorSequence, j: usize, k: usize) -> Result<CompositeStrip> {
    if j > k {
        return Err(Error::Range(format!("strip start {j} exceeds end {k}")));
    }
    let ops: Vec<AffineOperator> = (j..=k).map(|i| seq.get(i).into_owned()).collect();
    let mut realized = ops[0].clone();
    for op in &ops[1..] {
        realized = op.compose(&realized)?;
    }
    Ok(CompositeStrip {
        ops,
        realized,
        start_index: j,
        end_index: k,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitSubstituted {
    pub sequence: OperatorSequence,
    /// False when the input has no limit and was returned unchanged.
    pub has_limit: bool,
}

/// Replaces a sequence by its limit when it has one.
pub fn sequence_limit_substitute(seq: &OperatorSequence) -> LimitSubstituted {
    match seq.limit() {
        Some(limit) => LimitSubstituted {
            sequence: OperatorSequence::constant(limit),
            has_limit: true,
        },
        None => LimitSubstituted {
            sequence: seq.clone(),
            has_limit: false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(rows: &[&[f64]], offset: &[f64]) -> AffineOperator {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        AffineOperator::from_rows(&rows, offset).unwrap()
    }

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let x = v(&[2.0, 3.0]);
        assert_eq!(AffineOperator::identity(2).apply(&x).unwrap(), x);
        let half = AffineOperator::scaled_identity(2, 0.5).with_offset(&[1.0, 1.0]).unwrap();
        assert_eq!(half.apply(&v(&[0.0, 0.0])).unwrap(), v(&[1.0, 1.0]));
        let swap = op(&[&[0.0, 1.0], &[1.0, 0.0]], &[0.0, 0.0]);
        assert_eq!(swap.apply(&x).unwrap(), v(&[3.0, 2.0]));
        assert!(matches!(
            swap.apply(&v(&[1.0])),
            Err(Error::Dimension { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn compose_examples() {
        let t = op(&[&[1.0, 2.0], &[3.0, 4.0]], &[5.0, 6.0]);
        assert_eq!(t.compose(&AffineOperator::identity(2)).unwrap(), t);
        let outer = AffineOperator::scaled_identity(2, 0.5).with_offset(&[1.0, 0.0]).unwrap();
        let inner = AffineOperator::scaled_identity(2, 0.5).with_offset(&[0.0, 1.0]).unwrap();
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c, AffineOperator::scaled_identity(2, 0.25).with_offset(&[1.0, 0.5]).unwrap());
    }

    #[test]
    fn norm_examples() {
        for kind in NormKind::ALL {
            assert_eq!(AffineOperator::identity(3).norm(kind).unwrap(), 1.0);
        }
        let a = op(&[&[1.0, -1.0], &[0.0, 0.0]], &[0.0, 0.0]);
        assert_eq!(a.norm(NormKind::LInf).unwrap(), 2.0);
        assert_eq!(a.norm(NormKind::L1).unwrap(), 1.0);
        // offsets are excluded
        let shifted = a.clone().with_offset(&[100.0, 100.0]).unwrap();
        assert_eq!(shifted.norm(NormKind::LInf).unwrap(), 2.0);
    }

    #[test]
    fn strip_examples() {
        let t = op(&[&[0.3, 0.1], &[0.0, 0.2]], &[1.0, 0.0]);
        let s = strip(&OperatorSequence::constant(t.clone()), 4, 4).unwrap();
        assert_eq!(s.realized, t);

        let ta = op(&[&[1.2, 0.0], &[0.0, 0.1]], &[1.0, 0.0]);
        let tb = op(&[&[0.5, 0.5], &[0.0, 0.5]], &[0.0, 1.0]);
        let seq = OperatorSequence::periodic(vec![ta.clone(), tb.clone()]).unwrap();
        let s = strip(&seq, 2, 3).unwrap();
        assert_eq!(s.realized, tb.compose(&ta).unwrap());
        assert_eq!(s.ops.len(), 2);
        assert_eq!(seq.composite(2, 4).unwrap(), s.realized);
        assert!(matches!(strip(&seq, 3, 2), Err(Error::Range(_))));
    }

    #[test]
    fn limit_substitution() {
        let t = op(&[&[0.5, 0.0], &[0.0, 0.5]], &[1.0, 1.0]);
        let d = op(&[&[0.1, 0.2], &[0.0, 0.3]], &[0.5, 0.0]);

        let c = sequence_limit_substitute(&OperatorSequence::constant(t.clone()));
        assert!(c.has_limit);
        assert_eq!(c.sequence, OperatorSequence::constant(t.clone()));

        let conv = OperatorSequence::convergent(t.clone(), d.clone(), 0.9).unwrap();
        let s = sequence_limit_substitute(&conv);
        assert!(s.has_limit);
        assert_eq!(s.sequence, OperatorSequence::constant(t.clone()));

        let per = OperatorSequence::periodic(vec![t.clone(), d.clone()]).unwrap();
        let s = sequence_limit_substitute(&per);
        assert!(!s.has_limit);
        assert_eq!(s.sequence, per);

        let degenerate = OperatorSequence::periodic(vec![t.clone(), t.clone()]).unwrap();
        assert_eq!(degenerate.limit(), Some(t.clone()));

        let held = OperatorSequence::explicit(vec![d.clone(), t.clone()], TailRule::HoldLast).unwrap();
        assert_eq!(held.get(7).into_owned(), t);
        assert_eq!(held.limit(), Some(t.clone()));
        let cyc = OperatorSequence::explicit(vec![d.clone(), t.clone()], TailRule::Cycle).unwrap();
        assert_eq!(cyc.get(2).into_owned(), d);
        assert!(cyc.limit().is_none());
    }

    #[test]
    fn convergent_distance_is_geometric() {
        let t = op(&[&[0.5, 0.1], &[0.0, 0.4]], &[1.0, -1.0]);
        let d = op(&[&[0.3, -0.2], &[0.1, 0.3]], &[0.5, 0.25]);
        let rate = 0.9;
        let seq = OperatorSequence::convergent(t.clone(), d.clone(), rate).unwrap();
        for kind in NormKind::ALL {
            let dm = d.norm(kind).unwrap();
            let db = d.offset().iter().map(|x| x.abs()).fold(0.0, f64::max);
            for k in [0usize, 1, 5, 40, 200] {
                let tk = seq.get(k);
                let got = linalg::induced_norm(&(tk.matrix() - t.matrix()), kind).unwrap();
                let want = rate.powi(k as i32) * dm;
                assert!((got - want).abs() <= 1e-12 * (1.0 + want), "{kind} k={k}");
                if kind == NormKind::LInf {
                    let got_b = (tk.offset() - t.offset()).amax();
                    assert!((got_b - rate.powi(k as i32) * db).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(OperatorSequence::periodic(vec![]).is_err());
        let t = AffineOperator::identity(2);
        assert!(OperatorSequence::convergent(t.clone(), t.clone(), 1.0).is_err());
        assert!(OperatorSequence::convergent(t.clone(), AffineOperator::identity(3), 0.5).is_err());
        assert!(OperatorSequence::periodic(vec![t, AffineOperator::identity(3)]).is_err());
    }

    #[test]
    fn random_contractive_is_bounded_and_reproducible() {
        for kind in NormKind::ALL {
            let spec = RandomContractiveSpec {
                seed: 17,
                dim: 5,
                norm_bound: 0.8,
                norm_kind: kind,
                offset_scale: 0.5,
            };
            let a = OperatorSequence::random_contractive(spec.clone()).unwrap();
            let b = OperatorSequence::random_contractive(spec).unwrap();
            for k in 0..50 {
                let ta = a.get(k);
                assert_eq!(ta.as_ref(), b.get(k).as_ref());
                assert!(ta.norm(kind).unwrap() <= 0.8 + 1e-9);
            }
            assert_ne!(a.get(0).as_ref(), a.get(1).as_ref());
        }
    }
}
