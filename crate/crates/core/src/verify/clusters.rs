//! Residue-class cluster points of periodic scenarios.

use crate::error::{Error, Result};
use crate::iteration::{extend_trace, window_diameter, IterationTrace, Termination, DEFAULT_CAUCHY_WINDOW};
use crate::numfmt::format_float;
use crate::operator::OperatorSequence;
use crate::projector::ProjectorSequence;
use crate::space::{distance, Vector};

use super::report::{anchors, ReportEntry, Tolerances, Witness};

pub const CLUSTER_POINTS: &str = "check_cluster_points";

/// Distinct limits of the subsequences `{z_{mJ+r}}_m`, `r = 0..J`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSet {
    /// Distinct projected limits, in order of first appearance by class.
    pub points: Vec<Vector>,
    pub period: usize,
    /// Largest class residual among the classes merged into each point.
    pub per_point_residual: Vec<f64>,
    /// `class_assignment[r]` is the index into `points` of class `r`.
    pub class_assignment: Vec<usize>,
    /// Last recorded state `x_k` of each class.
    pub class_x_limits: Vec<Vector>,
    /// Last recorded `z_k` of each class.
    pub class_z_limits: Vec<Vector>,
    /// Per-class Cauchy residual of the projected iterates.
    pub class_residual: Vec<f64>,
}

impl ClusterSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Partitions the trace by `k mod period`, requires each class to be Cauchy
/// over its tail window (at most 32 members, at least one, half the class),
/// and merges class limits closer than `separation_tol`.
pub fn cluster_points(
    trace: &IterationTrace,
    period: usize,
    separation_tol: f64,
    limit_tol: f64,
) -> Result<ClusterSet> {
    if period == 0 {
        return Err(Error::InvalidArgument {
            name: "period",
            reason: "must be at least 1".into(),
        });
    }
    if trace.len() < period {
        return Err(Error::Range(format!(
            "trace of {} steps is shorter than the period {period}",
            trace.len()
        )));
    }
    let kind = trace.norm_kind;
    let mut set = ClusterSet {
        points: Vec::new(),
        period,
        per_point_residual: Vec::new(),
        class_assignment: Vec::with_capacity(period),
        class_x_limits: Vec::with_capacity(period),
        class_z_limits: Vec::with_capacity(period),
        class_residual: Vec::with_capacity(period),
    };
    for r in 0..period {
        let members: Vec<&Vector> = trace.steps.iter().skip(r).step_by(period).map(|s| &s.z).collect();
        let window = DEFAULT_CAUCHY_WINDOW.min((members.len() / 2).max(1));
        let residual = window_diameter(&members, window, kind)?;
        if !(residual < limit_tol) {
            return Err(Error::NotClustered { class: r, residual });
        }
        let last = trace.steps.iter().skip(r).step_by(period).last().expect("class is non-empty");
        let slot = set
            .points
            .iter()
            .map(|p| distance(p, &last.z, kind))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .position(|d| d <= separation_tol);
        let slot = match slot {
            Some(i) => {
                set.per_point_residual[i] = set.per_point_residual[i].max(residual);
                i
            }
            None => {
                set.points.push(last.z.clone());
                set.per_point_residual.push(residual);
                set.points.len() - 1
            }
        };
        set.class_assignment.push(slot);
        set.class_x_limits.push(last.x.clone());
        set.class_z_limits.push(last.z.clone());
        set.class_residual.push(residual);
    }
    Ok(set)
}

fn format_point(p: &Vector) -> String {
    let coords: Vec<String> = p.coords().iter().map(|&c| format_float(c)).collect();
    format!("[{}]", coords.join(", "))
}

/// Periodic operators of period `J` (taken from the sequence unless given)
/// with a projector sequence whose period divides `J`.
///
/// Sub-checks: (a) every residue class is Cauchy and at most `J` distinct
/// points remain; (b) each class state limit is a fixed point of its rotated
/// period composite `T̂(r + J, r)`; (c) every class increment obeys
/// `d(z_{(m+1)J+r}, z_{mJ+r}) ≤ μ K_r^m d(x_{J+r}, x_r)` with
/// `K_r = ‖T̂(r + J, r)‖`. The exponent counts completed periods.
pub fn check_cluster_points(
    trace: &IterationTrace,
    t_seq: &OperatorSequence,
    p_seq: &ProjectorSequence,
    period: Option<usize>,
    tol: &Tolerances,
) -> Result<(ReportEntry, Option<ClusterSet>)> {
    let kind = trace.norm_kind;
    let inapplicable = |why: String| {
        Ok((
            ReportEntry::inapplicable(CLUSTER_POINTS, anchors::CLUSTER_POINTS, why),
            None,
        ))
    };
    let Some(j) = period.or_else(|| t_seq.period()) else {
        return inapplicable("operator sequence is not periodic and no period was configured".into());
    };
    if let Some(tp) = t_seq.period() {
        if j % tp != 0 {
            return inapplicable(format!("operator period {tp} does not divide J = {j}"));
        }
    } else {
        return inapplicable("operator sequence is not periodic".into());
    }
    match p_seq.period() {
        Some(pp) if j % pp == 0 => {}
        _ => return inapplicable(format!("projector sequence does not repeat with period dividing J = {j}")),
    }
    if trace.len() < 2 * j + 1 {
        return inapplicable(format!("trace of {} steps is too short for period {j}", trace.len()));
    }
    let extended;
    let trace = match trace.terminated {
        Termination::Converged => {
            extended = extend_trace(trace, t_seq, p_seq, DEFAULT_CAUCHY_WINDOW * j)?;
            &extended
        }
        _ => trace,
    };

    let set = match cluster_points(trace, j, tol.separation, tol.limit) {
        Ok(set) => set,
        Err(Error::NotClustered { class, residual }) => {
            let last = trace.steps.iter().skip(class).step_by(j).last().expect("class is non-empty");
            return Ok((
                ReportEntry::fail(
                    CLUSTER_POINTS,
                    anchors::CLUSTER_POINTS,
                    residual - tol.limit,
                    Witness::new(last.k, &[&last.z]),
                    format!("residue class {class} mod {j} is not Cauchy: residual {residual:.3e}"),
                ),
                None,
            ));
        }
        Err(e) => return Err(e),
    };

    let mu = p_seq.sup_norm(trace.len(), kind)?;
    let steps = &trace.steps;
    let mut worst = set.class_residual.iter().map(|r| r - tol.limit).fold(f64::NEG_INFINITY, f64::max);
    let mut witness = Witness::new(0, &[]);
    let mut fixed_residual: f64 = 0.0;
    let mut increment_violation = f64::NEG_INFINITY;
    for r in 0..j {
        let composite = t_seq.composite(r, r + j)?;
        let x = &set.class_x_limits[r];
        let res = distance(&composite.apply(x)?, x, kind)?;
        fixed_residual = fixed_residual.max(res);
        if res - tol.limit > worst {
            worst = res - tol.limit;
            witness = Witness::new(r, &[x]);
        }

        let k_r = composite.norm(kind)?;
        let base = distance(&steps[r + j].x, &steps[r].x, kind)?;
        let mut geo = 1.0;
        let mut i = r;
        while i + j < steps.len() {
            let lhs = distance(&steps[i + j].z, &steps[i].z, kind)?;
            let v = lhs - mu * geo * base - tol.slack;
            increment_violation = increment_violation.max(v);
            if v > worst {
                worst = v;
                witness = Witness::new(i, &[&steps[i + j].z, &steps[i].z]);
            }
            geo *= k_r;
            i += j;
        }
    }
    if set.len() > j {
        worst = worst.max(1.0);
    }

    let points: Vec<String> = set.points.iter().map(format_point).collect();
    let details = format!(
        "J = {j}, {} distinct point(s): {}; max class residual {:.3e}; max rotated-composite \
         fixed-point residual {fixed_residual:.3e}; class increment bound max violation \
         {increment_violation:.3e} (exponent = completed periods)",
        set.len(),
        points.join(" "),
        set.class_residual.iter().copied().fold(0.0, f64::max),
    );
    Ok((
        ReportEntry::judged(CLUSTER_POINTS, anchors::CLUSTER_POINTS, worst, witness, details),
        Some(set),
    ))
}
