//! Decay of composites over a contractive strip schedule.

use crate::error::Result;
use crate::iteration::StripSchedule;
use crate::operator::{AffineOperator, OperatorSequence};
use crate::space::{distance, NormKind, Vector};

use super::fixed_point::fixed_point_direct;
use super::report::{anchors, ReportEntry, Tolerances, Witness};

pub const STRIP_DECAY: &str = "check_strip_decay";

/// Two strips closer than this are treated as the same operator.
const SAME_STRIP_TOL: f64 = 1e-12;

/// Sub-checks over the strips `S_k = T̂(j_{k+1}, j_k)` and the prefixes
/// `G_k = T̂(j_k, 0)`:
///
/// (a) `‖S_{k+1} ∘ S_k‖ ≤ K ‖S_k‖`;
/// (b) `‖G_k‖ ≤ ‖G_1‖ K^{k−1}`, `‖G_k‖ ≤ ∏_{m<k} ν_m`, and `‖G_k‖` non-increasing;
/// (c) trajectories `G_k x` of the sample points collapse onto each other
///     (`‖G_k x − G_k y‖ ≤ ∏ ν_m ‖x − y‖`, final distance below the limit
///     tolerance) and, when the last two strips coincide, reach the fixed
///     point of that strip operator.
pub fn check_strip_decay(
    t_seq: &OperatorSequence,
    schedule: &StripSchedule,
    samples: &[Vector],
    kind: NormKind,
    tol: &Tolerances,
) -> Result<ReportEntry> {
    schedule.validate()?;
    let big_k = schedule.k_max;
    let b = &schedule.boundaries;
    let strips: Vec<AffineOperator> = b
        .windows(2)
        .map(|w| t_seq.composite(w[0], w[1]))
        .collect::<Result<_>>()?;
    let strip_norms: Vec<f64> = strips.iter().map(|s| s.norm(kind)).collect::<Result<_>>()?;

    let mut worst = f64::NEG_INFINITY;
    let mut witness = Witness::new(0, &[]);
    let mut note = |v: f64, k: usize, worst: &mut f64| {
        if v > *worst {
            *worst = v;
            witness = Witness::new(k, &[]);
        }
    };

    // (a)
    let mut chain_worst = f64::NEG_INFINITY;
    for k in 0..strips.len().saturating_sub(1) {
        let pair = strips[k + 1].compose(&strips[k])?.norm(kind)?;
        let v = pair - big_k * strip_norms[k] - tol.slack;
        chain_worst = chain_worst.max(v);
        note(v, k, &mut worst);
    }

    // (b)
    let mut prefix = AffineOperator::identity(t_seq.dim());
    let mut prefix_norms = Vec::with_capacity(strips.len());
    let mut product = 1.0;
    let mut decay_worst = f64::NEG_INFINITY;
    for (k, (s, nu)) in strips.iter().zip(&schedule.per_strip_norm).enumerate() {
        prefix = s.compose(&prefix)?;
        product *= nu;
        let g = prefix.norm(kind)?;
        let g1 = *prefix_norms.first().unwrap_or(&g);
        let geometric = g - g1 * big_k.powi(k as i32) - tol.slack;
        let chained = g - product - tol.slack;
        let monotone = prefix_norms.last().map_or(f64::NEG_INFINITY, |&prev| g - prev - tol.slack);
        let v = geometric.max(chained).max(monotone);
        decay_worst = decay_worst.max(v);
        note(v, k + 1, &mut worst);
        prefix_norms.push(g);
    }

    // (c)
    let mut collapse_note = "fewer than two sample points, no collapse check".to_string();
    let mut fixed_note = String::new();
    if samples.len() >= 2 {
        let mut states: Vec<Vector> = samples.to_vec();
        let mut product = 1.0;
        let mut pair_worst = f64::NEG_INFINITY;
        for (k, (s, nu)) in strips.iter().zip(&schedule.per_strip_norm).enumerate() {
            for x in states.iter_mut() {
                *x = s.apply(x)?;
            }
            product *= nu;
            for i in 0..states.len() {
                for j in i + 1..states.len() {
                    let d = distance(&states[i], &states[j], kind)?;
                    let v = d - product * distance(&samples[i], &samples[j], kind)? - tol.slack;
                    pair_worst = pair_worst.max(v);
                    if v > worst {
                        worst = v;
                        witness = Witness::new(k + 1, &[&samples[i], &samples[j]]);
                    }
                }
            }
        }
        let mut spread: f64 = 0.0;
        for i in 0..states.len() {
            for j in i + 1..states.len() {
                spread = spread.max(distance(&states[i], &states[j], kind)?);
            }
        }
        if spread - tol.limit > worst {
            worst = spread - tol.limit;
            witness = Witness::new(strips.len(), &[&states[0], &states[1]]);
        }
        collapse_note = format!(
            "{} trajectories, final spread {spread:.3e}, pair bound max violation {pair_worst:.3e}",
            states.len()
        );

        if let [.., prev, last] = strips.as_slice() {
            if prev.distance(last, kind)? <= SAME_STRIP_TOL {
                let x_star = fixed_point_direct(last)?;
                let mut gap: f64 = 0.0;
                for x in &states {
                    gap = gap.max(distance(x, &x_star, kind)?);
                }
                if gap - tol.limit > worst {
                    worst = gap - tol.limit;
                    witness = Witness::new(strips.len(), &[&x_star]);
                }
                fixed_note = format!("; repeated strip operator, distance to its fixed point {gap:.3e}");
            }
        }
    }

    let final_prefix = prefix_norms.last().copied().unwrap_or(1.0);
    Ok(ReportEntry::judged(
        STRIP_DECAY,
        anchors::STRIP_DECAY,
        worst,
        witness,
        format!(
            "{} strips, K = {big_k:.9}, max gap {}; (a) chain max violation {chain_worst:.3e}; \
             (b) ||T^(j_k, 0)|| final {final_prefix:.3e}, decay max violation {decay_worst:.3e}; \
             (c) {collapse_note}{fixed_note}",
            strips.len(),
            schedule.max_gap,
        ),
    ))
}
