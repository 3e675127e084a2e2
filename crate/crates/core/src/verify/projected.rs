//! Checks on the projected iterates `z_k = P_k x_k`.

use crate::error::Result;
use crate::iteration::{cauchy_residual, extend_trace, IterationTrace, Termination, DEFAULT_CAUCHY_WINDOW};
use crate::operator::{decay, OperatorSequence, SequenceKind, TailRule};
use crate::projector::{ObliqueProjector, ProjectorSequence, ProjectorSequenceKind};
use crate::space::{distance, NormKind};

use super::fixed_point::fixed_point_direct;
use super::report::{anchors, ReportEntry, Tolerances, Witness};

pub const BOUND_NONEXPANSIVE: &str = "check_bound_nonexpansive";
pub const CONVERGENT_CONTRACTIVE: &str = "check_convergent_contractive";

/// Number of leading indices that determine the whole sequence up to `horizon`.
fn distinct_span(period: Option<usize>, horizon: usize) -> usize {
    period.map_or(horizon, |p| p.min(horizon))
}

/// `(max_k ‖A_k‖, all offsets zero)` over `0..horizon`.
pub(crate) fn scan_operators(t_seq: &OperatorSequence, horizon: usize, kind: NormKind) -> Result<(f64, bool)> {
    let mut max_norm: f64 = 0.0;
    let mut linear = true;
    for k in 0..distinct_span(t_seq.period(), horizon.max(1)) {
        let t = t_seq.get(k);
        max_norm = max_norm.max(t.norm(kind)?);
        linear &= t.is_linear();
    }
    Ok((max_norm, linear))
}

/// An index `n₀` and a constant `K < 1` with `‖A_k‖ ≤ K` for every `k ≥ n₀`,
/// when the sequence kind guarantees one.
pub fn contractive_tail(t_seq: &OperatorSequence, kind: NormKind) -> Result<Option<(usize, f64)>> {
    Ok(match t_seq.kind() {
        SequenceKind::Constant(op) => {
            let k = op.norm(kind)?;
            (k < 1.0).then_some((0, k))
        }
        SequenceKind::Convergent {
            limit,
            perturbation,
            rate,
        } => {
            let kl = limit.norm(kind)?;
            if kl >= 1.0 {
                return Ok(None);
            }
            let kp = perturbation.norm(kind)?;
            let target = 0.5 * (1.0 + kl);
            let mut n0 = 0usize;
            while kl + decay(*rate, n0) * kp > target {
                n0 += 1;
            }
            Some((n0, kl + decay(*rate, n0) * kp))
        }
        SequenceKind::Explicit {
            ops,
            tail: TailRule::HoldLast,
        } => {
            let norms = ops.iter().map(|op| op.norm(kind)).collect::<Result<Vec<_>>>()?;
            let mut n0 = norms.len();
            while n0 > 0 && norms[n0 - 1] < 1.0 {
                n0 -= 1;
            }
            (n0 < norms.len()).then(|| (n0, norms[n0..].iter().copied().fold(0.0, f64::max)))
        }
        SequenceKind::Periodic(_) | SequenceKind::Explicit { .. } => match t_seq.limit() {
            Some(op) => {
                let k = op.norm(kind)?;
                (k < 1.0).then_some((0, k))
            }
            None => None,
        },
        SequenceKind::RandomContractive(_) => None,
    })
}

fn constant_projector(p_seq: &ProjectorSequence) -> Option<ObliqueProjector> {
    match p_seq.kind() {
        ProjectorSequenceKind::Constant(p) => Some(p.clone()),
        ProjectorSequenceKind::Periodic(_) => p_seq.limit(),
        ProjectorSequenceKind::Explicit {
            tail: TailRule::Cycle,
            ..
        } => p_seq.limit(),
        _ => None,
    }
}

/// Every projected increment is bounded by `4μ‖x₀‖` when all `T_k` are linear
/// and non-expansive and `sup_k ‖P_k‖ ≤ μ`.
///
/// `mu` defaults to the measured supremum over the trace horizon. Affine
/// inputs are reported as inapplicable, with the generalized bound
/// `4μ‖x₀‖ + 3μ‖T₀(0)‖` evaluated in the details.
pub fn check_bound_nonexpansive(
    trace: &IterationTrace,
    t_seq: &OperatorSequence,
    p_seq: &ProjectorSequence,
    mu: Option<f64>,
    tol: &Tolerances,
) -> Result<ReportEntry> {
    let kind = trace.norm_kind;
    let horizon = trace.len();
    let (max_a, linear) = scan_operators(t_seq, horizon, kind)?;
    if max_a > 1.0 + tol.slack {
        return Ok(ReportEntry::inapplicable(
            BOUND_NONEXPANSIVE,
            anchors::BOUND_NONEXPANSIVE,
            format!("operators are not non-expansive: max ||A_k|| = {max_a:.9}"),
        ));
    }
    let measured = p_seq.sup_norm(horizon, kind)?;
    let mu = match mu {
        Some(m) if measured > m + tol.slack => {
            return Ok(ReportEntry::inapplicable(
                BOUND_NONEXPANSIVE,
                anchors::BOUND_NONEXPANSIVE,
                format!("projector norms exceed mu = {m}: sup ||P_k|| = {measured:.9}"),
            ))
        }
        Some(m) => m,
        None => measured,
    };
    let x0_norm = trace.x0.norm(kind);
    let bound = 4.0 * mu * x0_norm;

    let mut worst = f64::NEG_INFINITY;
    let mut witness = Witness::new(0, &[]);
    let mut max_dz: f64 = 0.0;
    let evaluate = |bound: f64, worst: &mut f64, witness: &mut Witness, max_dz: &mut f64| {
        *worst = worst.max(-bound - tol.slack);
        for (i, step) in trace.steps.iter().enumerate().skip(1) {
            let dz = step.d_z.unwrap_or(0.0);
            *max_dz = max_dz.max(dz);
            let v = dz - bound - tol.slack;
            if v > *worst {
                *worst = v;
                *witness = Witness::new(step.k, &[&step.z, &trace.steps[i - 1].z]);
            }
        }
    };

    if !linear {
        let b0 = t_seq.get(0).offset().clone();
        let b0 = crate::linalg::vector_norm(&b0, kind);
        let general = bound + 3.0 * mu * b0;
        evaluate(general, &mut worst, &mut witness, &mut max_dz);
        return Ok(ReportEntry::inapplicable(
            BOUND_NONEXPANSIVE,
            anchors::BOUND_NONEXPANSIVE,
            format!(
                "affine operators: the 4 mu ||x0|| bound needs T_k(0) = 0; generalized bound \
                 4 mu ||x0|| + 3 mu ||T_0(0)|| = {general:.9e}, max d_z = {max_dz:.9e}, \
                 worst excess = {worst:.3e}"
            ),
        ));
    }

    evaluate(bound, &mut worst, &mut witness, &mut max_dz);
    Ok(ReportEntry::judged(
        BOUND_NONEXPANSIVE,
        anchors::BOUND_NONEXPANSIVE,
        worst,
        witness,
        format!(
            "mu = {mu:.9}, ||x0|| = {x0_norm:.9}, bound = {bound:.9e}, max d_z = {max_dz:.9e}, \
             min slack = {:.9e}, steps = {horizon}",
            bound - max_dz
        ),
    ))
}

/// Convergent contractive `T_k → T` with a constant projector `P`: the
/// projected iterates form a Cauchy sequence whose limit is `P x*`, `x* = T x*`,
/// and every projected increment obeys the accumulated recursion majorant
///
/// `‖P‖ (K^{m} d(x_{n₀+1}, x_{n₀}) + D_k S_k (1 − K^{m}) / (1 − K))`, `m = k − n₀ + 1`,
///
/// with `D_k = sup_{n₀≤j≤k} ‖T_{j+1} − T_j‖` and `S_k = sup_{j≤k} ‖x_j‖`
/// (`max(1, ‖x_j‖)` for affine operators). The single-increment variant
/// and the variant with coefficient `K (1 − K^{k−n₀}) / (1 − K)` are
/// evaluated alongside and their violation counts reported.
pub fn check_convergent_contractive(
    trace: &IterationTrace,
    t_seq: &OperatorSequence,
    p_seq: &ProjectorSequence,
    tol: &Tolerances,
) -> Result<ReportEntry> {
    let kind = trace.norm_kind;
    let inapplicable = |why: String| {
        Ok(ReportEntry::inapplicable(
            CONVERGENT_CONTRACTIVE,
            anchors::CONVERGENT_CONTRACTIVE,
            why,
        ))
    };
    let Some(limit) = t_seq.limit() else {
        return inapplicable("operator sequence has no limit".into());
    };
    let Some((n0, k_const)) = contractive_tail(t_seq, kind)? else {
        return inapplicable("no contractive tail: the limit operator is not contractive".into());
    };
    let Some(p) = constant_projector(p_seq) else {
        return inapplicable("projector sequence is not constant".into());
    };
    let p_norm = p.norm(kind)?;
    let steps = &trace.steps;
    let len = steps.len();

    // (a) Cauchy residual of the projected tail; a converged trace is
    // continued so the window lies past the stopping point.
    let tail = match trace.terminated {
        Termination::Converged => extend_trace(trace, t_seq, p_seq, DEFAULT_CAUCHY_WINDOW)?,
        _ => trace.clone(),
    };
    let window = DEFAULT_CAUCHY_WINDOW.min(tail.len());
    let residual = cauchy_residual(&tail, window)?;
    let viol_a = residual - tol.limit;
    let mut worst = viol_a;
    let tail_last = tail.last();
    let mut witness = Witness::new(tail_last.k, &[&tail_last.z, &tail.steps[tail.len() - window].z]);
    let last = trace.last();

    // (b) limit equals P x*
    let x_star = fixed_point_direct(&limit)?;
    let z_star = p.apply(&x_star)?;
    let limit_err = distance(&last.z, &z_star, kind)?;
    let viol_b = limit_err - tol.limit;
    if viol_b > worst {
        worst = viol_b;
        witness = Witness::new(last.k, &[&last.z, &z_star]);
    }

    // (c) majorant on every increment from n0 on
    let (_, linear) = scan_operators(t_seq, len, kind)?;
    let mut viol_c = f64::NEG_INFINITY;
    let mut literal_violations = 0usize;
    let mut shifted_violations = 0usize;
    let mut checked = 0usize;
    if len >= n0 + 3 {
        let e0 = distance(&steps[n0 + 1].x, &steps[n0].x, kind)?;
        let x_n0 = steps[n0].x.norm(kind);
        let size = |j: usize| {
            let n = steps[j].x.norm(kind);
            if linear {
                n
            } else {
                n.max(1.0)
            }
        };
        let mut sup_size = (0..n0).map(size).fold(0.0, f64::max);
        let mut sup_step: f64 = 0.0;
        for k in n0..=len - 3 {
            sup_size = sup_size.max(size(k));
            let step_k = t_seq.get(k + 1).distance(&t_seq.get(k), kind)?;
            sup_step = sup_step.max(step_k);
            let m = (k - n0 + 1) as i32;
            let geo = k_const.powi(m);
            let rhs = p_norm * (geo * e0 + sup_step * sup_size * (1.0 - geo) / (1.0 - k_const));
            let literal = p_norm
                * (geo * e0
                    + k_const * (1.0 - k_const.powi(m - 1)) / (1.0 - k_const) * step_k * x_n0);
            let shifted = p_norm
                * (geo * e0 + k_const * (1.0 - k_const.powi(m - 1)) / (1.0 - k_const) * sup_step * sup_size);
            let lhs = steps[k + 2].d_z.unwrap_or(0.0);
            if lhs > shifted + tol.slack {
                shifted_violations += 1;
            }
            let v = lhs - rhs - tol.slack;
            if lhs > literal + tol.slack {
                literal_violations += 1;
            }
            checked += 1;
            viol_c = viol_c.max(v);
            if v > worst {
                worst = v;
                witness = Witness::new(k, &[&steps[k + 2].z, &steps[k + 1].z]);
            }
        }
    }

    Ok(ReportEntry::judged(
        CONVERGENT_CONTRACTIVE,
        anchors::CONVERGENT_CONTRACTIVE,
        worst,
        witness,
        format!(
            "n0 = {n0}, K = {k_const:.9}, ||P|| = {p_norm:.9}; (a) cauchy residual over last {window} = \
             {residual:.3e}; (b) |z_final - P x*| = {limit_err:.3e}; (c) majorant checked at {checked} \
             indices, max violation {viol_c:.3e}; form with coefficient K(1-K^(k-n0))/(1-K) violated at \
             {shifted_violations} indices, single-increment form at {literal_violations} indices"
        ),
    ))
}
