//! The projected iteration `x_{k+1} = T_k x_k`, `z_k = P_k x_k`, its traces,
//! and greedy discovery of contractive strip schedules.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numfmt::format_float;
use crate::operator::{AffineOperator, OperatorSequence};
use crate::projector::ProjectorSequence;
use crate::space::{distance, NormKind, Vector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOptions {
    pub max_k: usize,
    /// Convergence is declared on state increments `d(x_k, x_{k−1})`.
    pub conv_tol: f64,
    pub div_bound: f64,
    /// Consecutive sub-tolerance increments required to declare convergence.
    pub patience: usize,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions {
            max_k: 100_000,
            conv_tol: 1e-10,
            div_bound: 1e12,
            patience: 10,
        }
    }
}

pub const DEFAULT_CAUCHY_WINDOW: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    MaxIter,
    Converged,
    Diverged,
}

/// One recorded step. The increments look backwards: `d_x = d(x_k, x_{k−1})`,
/// absent at `k = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub k: usize,
    pub x: Vector,
    pub z: Vector,
    pub d_x: Option<f64>,
    pub d_z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub steps: Vec<Step>,
    pub norm_kind: NormKind,
    pub x0: Vector,
    pub terminated: Termination,
}

impl IterationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &Step {
        self.steps.last().expect("a trace always holds x0")
    }

    pub fn dim(&self) -> usize {
        self.x0.dim()
    }

    /// CSV with header `k,x_0..,z_0..,d_x,d_z,strip_boundary`.
    pub fn to_csv(&self, strip_boundaries: &[usize]) -> String {
        let n = self.dim();
        let mut out = String::from("k");
        for i in 0..n {
            let _ = write!(out, ",x_{i}");
        }
        for i in 0..n {
            let _ = write!(out, ",z_{i}");
        }
        out.push_str(",d_x,d_z,strip_boundary\n");
        let opt = |v: Option<f64>| v.map(format_float).unwrap_or_default();
        for step in &self.steps {
            let _ = write!(out, "{}", step.k);
            for c in step.x.coords().iter().chain(step.z.coords()) {
                out.push(',');
                out.push_str(&format_float(*c));
            }
            let boundary = strip_boundaries.binary_search(&step.k).is_ok() as u8;
            let _ = writeln!(out, ",{},{},{}", opt(step.d_x), opt(step.d_z), boundary);
        }
        out
    }
}

/// Runs the projected iteration from `x0`.
pub fn iterate(
    t_seq: &OperatorSequence,
    p_seq: &ProjectorSequence,
    x0: &Vector,
    opts: &IterateOptions,
    kind: NormKind,
) -> Result<IterationTrace> {
    let n = t_seq.dim();
    if p_seq.dim() != n {
        return Err(Error::dimension(n, p_seq.dim()));
    }
    x0.check_dim(n)?;
    if opts.max_k < 1 {
        return Err(Error::InvalidArgument {
            name: "max_k",
            reason: "must be at least 1".into(),
        });
    }

    let mut steps: Vec<Step> = Vec::new();
    let mut x = x0.clone();
    let mut streak = 0usize;
    let terminated = 'run: {
        for k in 0..=opts.max_k {
            let z = p_seq.get(k).map_err(|e| at_step(e, k))?.apply(&x).map_err(|e| at_step(e, k))?;
            let (d_x, d_z) = match steps.last() {
                Some(prev) => (Some(distance(&x, &prev.x, kind)?), Some(distance(&z, &prev.z, kind)?)),
                None => (None, None),
            };
            let norm_x = x.norm(kind);
            steps.push(Step { k, x: x.clone(), z, d_x, d_z });

            if norm_x > opts.div_bound {
                break 'run Termination::Diverged;
            }
            match d_x {
                Some(d) if d < opts.conv_tol => streak += 1,
                _ => streak = 0,
            }
            if streak >= opts.patience {
                break 'run Termination::Converged;
            }
            if k == opts.max_k {
                break;
            }
            x = t_seq.get(k).apply(&x).map_err(|e| at_step(e, k + 1))?;
        }
        Termination::MaxIter
    };
    Ok(IterationTrace {
        steps,
        norm_kind: kind,
        x0: x0.clone(),
        terminated,
    })
}

/// Copy of `trace` continued for `extra` further steps of the same rule,
/// ignoring the stopping criteria. Used to observe the tail beyond the point
/// where convergence was declared.
pub fn extend_trace(
    trace: &IterationTrace,
    t_seq: &OperatorSequence,
    p_seq: &ProjectorSequence,
    extra: usize,
) -> Result<IterationTrace> {
    let kind = trace.norm_kind;
    let mut out = trace.clone();
    for _ in 0..extra {
        let prev = out.last();
        let k = prev.k + 1;
        let x = t_seq.get(prev.k).apply(&prev.x).map_err(|e| at_step(e, k))?;
        let z = p_seq.get(k).map_err(|e| at_step(e, k))?.apply(&x).map_err(|e| at_step(e, k))?;
        let d_x = Some(distance(&x, &prev.x, kind)?);
        let d_z = Some(distance(&z, &prev.z, kind)?);
        out.steps.push(Step { k, x, z, d_x, d_z });
    }
    Ok(out)
}

fn at_step(e: Error, step: usize) -> Error {
    match e {
        Error::InvalidVector { .. } => Error::Numerical {
            step: Some(step),
            message: "state became non-finite".into(),
        },
        Error::Numerical { message, .. } => Error::Numerical {
            step: Some(step),
            message,
        },
        other => other,
    }
}

/// Max pairwise distance among the last `w` projected iterates.
pub fn cauchy_residual(trace: &IterationTrace, w: usize) -> Result<f64> {
    let zs: Vec<&Vector> = trace.steps.iter().map(|s| &s.z).collect();
    window_diameter(&zs, w, trace.norm_kind)
}

pub(crate) fn window_diameter(points: &[&Vector], w: usize, kind: NormKind) -> Result<f64> {
    if w == 0 || w > points.len() {
        return Err(Error::Range(format!(
            "window {w} does not fit a trace of {} steps",
            points.len()
        )));
    }
    let tail = &points[points.len() - w..];
    let mut worst: f64 = 0.0;
    for (i, a) in tail.iter().enumerate() {
        for b in &tail[i + 1..] {
            worst = worst.max(distance(a, b, kind)?);
        }
    }
    Ok(worst)
}

/// Boundaries `0 = j_0 < j_1 < …` such that every strip
/// `T̂(j_{k+1}, j_k) = T_{j_{k+1}−1} ∘ … ∘ T_{j_k}` is contractive.
#[derive(Debug, Clone, PartialEq)]
pub struct StripSchedule {
    pub boundaries: Vec<usize>,
    pub per_strip_norm: Vec<f64>,
    /// Largest per-strip norm.
    pub k_max: f64,
    pub max_gap: usize,
}

impl StripSchedule {
    pub fn strip_count(&self) -> usize {
        self.per_strip_norm.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundaries.first() != Some(&0) {
            return Err(Error::Range("schedule must start at index 0".into()));
        }
        if self.boundaries.len() != self.per_strip_norm.len() + 1 {
            return Err(Error::Range(format!(
                "{} boundaries for {} strips",
                self.boundaries.len(),
                self.per_strip_norm.len()
            )));
        }
        for w in self.boundaries.windows(2) {
            let gap = w[1].wrapping_sub(w[0]);
            if w[1] <= w[0] || gap > self.max_gap {
                return Err(Error::Range(format!(
                    "gap between boundaries {} and {} outside 1..={}",
                    w[0], w[1], self.max_gap
                )));
            }
        }
        if let Some(bad) = self.per_strip_norm.iter().find(|&&nu| nu > self.k_max) {
            return Err(Error::Range(format!("strip norm {bad} exceeds K = {}", self.k_max)));
        }
        if !(self.k_max < 1.0) {
            return Err(Error::Range(format!("schedule constant K = {} is not < 1", self.k_max)));
        }
        Ok(())
    }
}

/// Greedy schedule over `[0, horizon)`: from each boundary take the shortest
/// admissible strip of length at most `max_gap` with norm `≤ k_target`.
pub fn find_contractive_strips(
    t_seq: &OperatorSequence,
    k_target: f64,
    max_gap: usize,
    horizon: usize,
    kind: NormKind,
) -> Result<StripSchedule> {
    if !(0.0..1.0).contains(&k_target) {
        return Err(Error::InvalidArgument {
            name: "K_target",
            reason: format!("must lie in [0, 1), got {k_target}"),
        });
    }
    if max_gap < 1 {
        return Err(Error::InvalidArgument {
            name: "max_gap",
            reason: "must be at least 1".into(),
        });
    }
    let mut boundaries = vec![0usize];
    let mut per_strip_norm = Vec::new();
    let mut j = 0usize;
    while j < horizon {
        let mut acc = AffineOperator::identity(t_seq.dim());
        let mut best = f64::INFINITY;
        let mut found = None;
        for gap in 1..=max_gap {
            acc = t_seq.get(j + gap - 1).compose(&acc)?;
            let nu = acc.norm(kind)?;
            best = best.min(nu);
            if nu <= k_target {
                found = Some((gap, nu));
                break;
            }
        }
        let (gap, nu) = found.ok_or(Error::NoContractiveStrip {
            start: j,
            max_gap,
            target: k_target,
            best_norm: best,
        })?;
        j += gap;
        boundaries.push(j);
        per_strip_norm.push(nu);
    }
    let k_max = per_strip_norm.iter().copied().fold(0.0, f64::max);
    Ok(StripSchedule {
        boundaries,
        per_strip_norm,
        k_max,
        max_gap,
    })
}
