//! Checks on limits of operator sequences: asymptotic contractivity of
//! `P_n T_n`, limit substitution in composites, continuity of `T_n x_n`
//! and the compactness inequality.

use crate::error::{Error, Result};
use crate::operator::{sequence_limit_substitute, AffineOperator, OperatorSequence, SequenceKind};
use crate::projector::ProjectorSequence;
use crate::space::{distance, NormKind, Vector};

use super::fit::{fit_constant, fit_decay};
use super::report::{anchors, ReportEntry, Tolerances, Witness};

pub const ASYMPTOTIC_CONTRACTIVITY: &str = "check_asymptotic_contractivity";
pub const COMPOSITE_SUBSTITUTION: &str = "check_composite_substitution";
pub const LIMIT_CONTINUITY: &str = "check_limit_continuity";
pub const COMPACTNESS_INEQUALITY: &str = "check_compactness_inequality";

/// Samples below this level are treated as rounding noise by the decay fits.
pub const FIT_FLOOR: f64 = 1e-13;

/// `‖P_n T_n‖` along `0..=horizon` together with the limit quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractivityProfile {
    pub norms: Vec<f64>,
    /// `‖P‖ · ‖T‖`.
    pub limit_bound: f64,
    /// `‖P T‖`.
    pub limit_product: f64,
}

impl ContractivityProfile {
    /// `None` when either sequence lacks a limit.
    pub fn compute(
        p_seq: &ProjectorSequence,
        t_seq: &OperatorSequence,
        horizon: usize,
        kind: NormKind,
    ) -> Result<Option<Self>> {
        let (Some(p), Some(t)) = (p_seq.limit(), t_seq.limit()) else {
            return Ok(None);
        };
        if p.dim() != t.dim() {
            return Err(Error::dimension(t.dim(), p.dim()));
        }
        let norms = (0..=horizon)
            .map(|n| p_seq.get(n)?.operator().compose(&t_seq.get(n))?.norm(kind))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(ContractivityProfile {
            norms,
            limit_bound: p.norm(kind)? * t.norm(kind)?,
            limit_product: p.operator().compose(&t)?.norm(kind)?,
        }))
    }

    /// Smallest `n₀` with `‖P_n T_n‖ ≤ ‖P‖‖T‖ + δ` for every `n₀ ≤ n ≤ horizon`.
    pub fn n0(&self, delta: f64) -> Result<Option<usize>> {
        if !(delta > 0.0) {
            return Err(Error::InvalidArgument {
                name: "delta",
                reason: format!("must be positive, got {delta}"),
            });
        }
        let bound = self.limit_bound + delta;
        let n0 = self
            .norms
            .iter()
            .rposition(|&v| v > bound)
            .map_or(0, |last_bad| last_bad + 1);
        Ok((n0 < self.norms.len()).then_some(n0))
    }

    /// `‖PT‖ < 1` and `δ < 1 − ‖PT‖`.
    pub fn asymptotically_contractive(&self, delta: f64) -> bool {
        self.limit_product < 1.0 && delta < 1.0 - self.limit_product
    }
}

/// For each `δ`, the smallest `n₀` after which `‖P_n T_n‖ ≤ ‖P‖‖T‖ + δ`
/// holds up to the horizon. Pass iff every `δ` has one and `n₀` does not
/// decrease as `δ` shrinks.
pub fn check_asymptotic_contractivity(
    p_seq: &ProjectorSequence,
    t_seq: &OperatorSequence,
    deltas: &[f64],
    horizon: usize,
    kind: NormKind,
) -> Result<ReportEntry> {
    if deltas.is_empty() {
        return Err(Error::InvalidArgument {
            name: "delta",
            reason: "at least one value is required".into(),
        });
    }
    if let Some(d) = deltas.iter().find(|d| !(**d > 0.0)) {
        return Err(Error::InvalidArgument {
            name: "delta",
            reason: format!("must be positive, got {d}"),
        });
    }
    let Some(profile) = ContractivityProfile::compute(p_seq, t_seq, horizon, kind)? else {
        return Ok(ReportEntry::inapplicable(
            ASYMPTOTIC_CONTRACTIVITY,
            anchors::ASYMPTOTIC_CONTRACTIVITY,
            "projector or operator sequence has no limit".into(),
        ));
    };
    let mut worst = f64::NEG_INFINITY;
    let mut witness = Witness::new(0, &[]);
    let mut parts = vec![format!(
        "||P|| ||T|| = {:.12}, ||PT|| = {:.12}, horizon = {horizon}",
        profile.limit_bound, profile.limit_product
    )];
    let mut found = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let bound = profile.limit_bound + delta;
        let flag = if profile.asymptotically_contractive(delta) {
            "asymptotically contractive"
        } else {
            "not asymptotically contractive"
        };
        match profile.n0(delta)? {
            Some(n0) => {
                let v = profile.norms[n0..].iter().map(|v| v - bound).fold(f64::NEG_INFINITY, f64::max);
                if v > worst {
                    worst = v;
                    witness = Witness::new(n0, &[]);
                }
                let before = match n0 {
                    0 => "none".to_string(),
                    _ => format!("{:.12}", profile.norms[n0 - 1]),
                };
                parts.push(format!(
                    "delta = {delta}: n0 = {n0}, ||P_(n0-1) T_(n0-1)|| = {before}, ||P_n0 T_n0|| = {:.12}, {flag}",
                    profile.norms[n0]
                ));
                found.push((delta, n0));
            }
            None => {
                let v = profile.norms[horizon] - bound;
                if v > worst {
                    worst = v;
                    witness = Witness::new(horizon, &[]);
                }
                parts.push(format!("delta = {delta}: no n0 within the horizon, {flag}"));
            }
        }
    }
    found.sort_by(|a, b| b.0.total_cmp(&a.0));
    let monotone = found.windows(2).all(|w| w[0].1 <= w[1].1);
    if !monotone {
        worst = worst.max(1.0);
    }
    parts.push(format!("n0 non-decreasing as delta shrinks: {monotone}"));
    Ok(ReportEntry::judged(
        ASYMPTOTIC_CONTRACTIVITY,
        anchors::ASYMPTOTIC_CONTRACTIVITY,
        worst,
        witness,
        parts.join("; "),
    ))
}

/// `T_k = F_{m,k} ∘ … ∘ F_{1,k}`.
fn step_operator(factors: &[OperatorSequence], k: usize) -> Result<AffineOperator> {
    let mut acc = factors[0].get(k).into_owned();
    for f in &factors[1..] {
        acc = f.get(k).compose(&acc)?;
    }
    Ok(acc)
}

/// `T_{k+window} ∘ … ∘ T_k` over the composite steps.
fn window_composite(factors: &[OperatorSequence], k: usize, window: usize) -> Result<AffineOperator> {
    let mut acc = step_operator(factors, k)?;
    for m in k + 1..=k + window {
        acc = step_operator(factors, m)?.compose(&acc)?;
    }
    Ok(acc)
}

/// Composite steps `T_k = F_{m,k} ∘ … ∘ F_{1,k}` over the window
/// `T̂(k + i + 1, k) = T_{k+i} ∘ … ∘ T_k`, compared against the same window
/// built from limit-substituted factors (factors without a limit are kept).
///
/// Pass requires the final sample-maximal distance below the limit tolerance
/// and, when some factor is Convergent with rate `ρ`, a fitted decay rate
/// `≤ max ρ + 0.02`. The constant `C` of the model `C ρ^k` is fitted and reported.
pub fn check_composite_substitution(
    factors: &[OperatorSequence],
    window: usize,
    samples: &[Vector],
    horizon: usize,
    kind: NormKind,
    tol: &Tolerances,
) -> Result<ReportEntry> {
    let Some(first) = factors.first() else {
        return Err(Error::InvalidArgument {
            name: "factors",
            reason: "at least one factor sequence is required".into(),
        });
    };
    let dim = first.dim();
    if let Some(bad) = factors.iter().find(|f| f.dim() != dim) {
        return Err(Error::dimension(dim, bad.dim()));
    }
    for x in samples {
        x.check_dim(dim)?;
    }
    let substituted: Vec<OperatorSequence> =
        factors.iter().map(|f| sequence_limit_substitute(f).sequence).collect();
    let kept = factors.iter().filter(|f| f.limit().is_none()).count();
    let rho = factors
        .iter()
        .filter_map(|f| match f.kind() {
            SequenceKind::Convergent { rate, .. } => Some(*rate),
            _ => None,
        })
        .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));

    let mut series = Vec::with_capacity(horizon + 1);
    let mut witness = Witness::new(0, &[]);
    let mut peak: f64 = 0.0;
    for k in 0..=horizon {
        let full = window_composite(factors, k, window)?;
        let limit = window_composite(&substituted, k, window)?;
        let mut d_k: f64 = 0.0;
        for x in samples {
            let d = distance(&full.apply(x)?, &limit.apply(x)?, kind)?;
            if d > d_k {
                d_k = d;
                if k == horizon {
                    witness = Witness::new(k, &[x]);
                }
            }
        }
        peak = peak.max(d_k);
        series.push((k, d_k));
    }
    let final_value = series.last().map_or(0.0, |s| s.1);
    let mut worst = final_value - tol.limit;

    let mut fit_note = String::from("no Convergent factor, no rate fit");
    if let Some(rho) = rho {
        match fit_decay(&series, FIT_FLOOR) {
            Some(fit) => {
                let c = fit_constant(&series, rho, FIT_FLOOR).unwrap_or(0.0);
                let excess = fit.rate - (rho + 0.02);
                if excess > worst {
                    worst = excess;
                    witness = Witness::new(horizon, &[]);
                }
                fit_note = format!(
                    "fitted rate {:.6} over {} points (max factor rate {rho}), fitted C = {c:.6e}",
                    fit.rate, fit.points
                );
            }
            None => fit_note = format!("fewer than 3 samples above {FIT_FLOOR:e}; distances vanish (max factor rate {rho})"),
        }
    }
    Ok(ReportEntry::judged(
        COMPOSITE_SUBSTITUTION,
        anchors::COMPOSITE_SUBSTITUTION,
        worst,
        witness,
        format!(
            "{} factor(s), {kept} without a limit kept verbatim, window i = {window}, {} sample point(s), \
             horizon {horizon}; max distance {peak:.3e}, final distance {final_value:.3e}; {fit_note}",
            factors.len(),
            samples.len(),
        ),
    ))
}

/// `x_n = limit + rate^n · direction`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergentVector {
    pub limit: Vector,
    pub direction: Vector,
    pub rate: f64,
}

impl ConvergentVector {
    pub fn new(limit: Vector, direction: Vector, rate: f64) -> Result<Self> {
        direction.check_dim(limit.dim())?;
        if !(0.0..1.0).contains(&rate) {
            return Err(Error::InvalidArgument {
                name: "rate",
                reason: format!("decay rate must lie in [0, 1), got {rate}"),
            });
        }
        Ok(ConvergentVector { limit, direction, rate })
    }

    pub fn at(&self, n: usize) -> Vector {
        &self.limit + &self.direction.scale(crate::operator::decay(self.rate, n))
    }
}

/// `‖T_n x_n − T x‖ ≤ ‖A‖ ‖x_n − x‖ + ‖A_n − A‖ ‖x_n‖ + ‖b_n − b‖` at every
/// `n ≤ horizon` (the offset term vanishes for linear operators), and the
/// left side ends below the limit tolerance.
pub fn check_limit_continuity(
    t_seq: &OperatorSequence,
    x_seq: &ConvergentVector,
    horizon: usize,
    kind: NormKind,
    tol: &Tolerances,
) -> Result<ReportEntry> {
    let Some(t) = t_seq.limit() else {
        return Ok(ReportEntry::inapplicable(
            LIMIT_CONTINUITY,
            anchors::LIMIT_CONTINUITY,
            "operator sequence has no limit".into(),
        ));
    };
    x_seq.limit.check_dim(t.dim())?;
    let a_norm = t.norm(kind)?;
    let tx = t.apply(&x_seq.limit)?;
    let mut worst = f64::NEG_INFINITY;
    let mut witness = Witness::new(0, &[]);
    let mut series = Vec::with_capacity(horizon + 1);
    let mut min_slack = f64::INFINITY;
    for n in 0..=horizon {
        let tn = t_seq.get(n);
        let xn = x_seq.at(n);
        let lhs = distance(&tn.apply(&xn)?, &tx, kind)?;
        let da = crate::linalg::induced_norm(&(tn.matrix() - t.matrix()), kind)?;
        let db = crate::linalg::vector_norm(&(tn.offset() - t.offset()), kind);
        let rhs = a_norm * distance(&xn, &x_seq.limit, kind)? + da * xn.norm(kind) + db;
        min_slack = min_slack.min(rhs - lhs);
        let v = lhs - rhs - tol.slack;
        if v > worst {
            worst = v;
            witness = Witness::new(n, &[&xn]);
        }
        series.push((n, lhs));
    }
    let final_lhs = series.last().map_or(0.0, |s| s.1);
    if final_lhs - tol.limit > worst {
        worst = final_lhs - tol.limit;
        witness = Witness::new(horizon, &[&x_seq.at(horizon)]);
    }
    let fit = fit_decay(&series, FIT_FLOOR)
        .map_or("no decay fit (too few samples above floor)".to_string(), |f| {
            format!("fitted decay rate of the left side {:.6}", f.rate)
        });
    Ok(ReportEntry::judged(
        LIMIT_CONTINUITY,
        anchors::LIMIT_CONTINUITY,
        worst,
        witness,
        format!(
            "||T|| = {a_norm:.9}, horizon {horizon}, min slack {min_slack:.3e}, final ||T_n x_n - T x|| = \
             {final_lhs:.3e}; {fit}"
        ),
    ))
}

/// `‖T z_i − T z_j‖ ≤ ‖T − T_n‖ (‖z_i‖ + ‖z_j‖) + ‖T_n z_i − T_n z_j‖` at
/// every `n ≤ horizon`.
pub fn check_compactness_inequality(
    t_seq: &OperatorSequence,
    z_i: &Vector,
    z_j: &Vector,
    horizon: usize,
    kind: NormKind,
    tol: &Tolerances,
) -> Result<ReportEntry> {
    let Some(t) = t_seq.limit() else {
        return Ok(ReportEntry::inapplicable(
            COMPACTNESS_INEQUALITY,
            anchors::COMPACTNESS_INEQUALITY,
            "operator sequence has no limit".into(),
        ));
    };
    z_i.check_dim(t.dim())?;
    z_j.check_dim(t.dim())?;
    let lhs = distance(&t.apply(z_i)?, &t.apply(z_j)?, kind)?;
    let sizes = z_i.norm(kind) + z_j.norm(kind);
    let mut worst = f64::NEG_INFINITY;
    let mut min_slack = f64::INFINITY;
    let mut witness = Witness::new(0, &[z_i, z_j]);
    for n in 0..=horizon {
        let tn = t_seq.get(n);
        let rhs = t.distance(&tn, kind)? * sizes + distance(&tn.apply(z_i)?, &tn.apply(z_j)?, kind)?;
        min_slack = min_slack.min(rhs - lhs);
        let v = lhs - rhs - tol.slack;
        if v > worst {
            worst = v;
            witness = Witness::new(n, &[z_i, z_j]);
        }
    }
    Ok(ReportEntry::judged(
        COMPACTNESS_INEQUALITY,
        anchors::COMPACTNESS_INEQUALITY,
        worst,
        witness,
        format!("||T z_i - T z_j|| = {lhs:.9e}, horizon {horizon}, min slack {min_slack:.3e}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::{oblique_projector, orthogonal_projector};
    use crate::verify::Status;
    use nalgebra::DMatrix;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn op(rows: &[&[f64]]) -> AffineOperator {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        AffineOperator::from_rows(&rows, &vec![0.0; rows.len()]).unwrap()
    }

    #[test]
    fn constant_sequences_give_n0_zero() {
        let p = ProjectorSequence::constant(orthogonal_projector(DMatrix::from_column_slice(2, 1, &[1.0, 1.0])).unwrap());
        let t = OperatorSequence::constant(op(&[&[0.3, 0.1], &[0.0, 0.4]]));
        let profile = ContractivityProfile::compute(&p, &t, 50, NormKind::L2).unwrap().unwrap();
        assert_eq!(profile.n0(0.1).unwrap(), Some(0));
        assert!(profile.limit_product <= profile.limit_bound + 1e-12);
        let e = check_asymptotic_contractivity(&p, &t, &[0.1], 50, NormKind::L2).unwrap();
        assert_eq!(e.status, Status::Pass);
        assert!(e.details.contains("n0 = 0"));
    }

    #[test]
    fn non_positive_delta_is_rejected() {
        let p = ProjectorSequence::identity(2);
        let t = OperatorSequence::constant(AffineOperator::identity(2));
        assert!(matches!(
            check_asymptotic_contractivity(&p, &t, &[0.1, 0.0], 10, NormKind::L2),
            Err(Error::InvalidArgument { name: "delta", .. })
        ));
    }

    #[test]
    fn n0_is_recheckable_and_monotone() {
        let limit = oblique_projector(
            DMatrix::from_column_slice(2, 1, &[1.0, 0.0]),
            DMatrix::from_column_slice(2, 1, &[0.3, 1.0]),
        ).unwrap();
        let p = ProjectorSequence::convergent(
            limit,
            DMatrix::from_column_slice(2, 1, &[0.0, 0.4]),
            DMatrix::from_column_slice(2, 1, &[0.5, 0.0]),
            0.8,
        ).unwrap();
        let t = OperatorSequence::convergent(
            AffineOperator::scaled_identity(2, 0.5),
            op(&[&[0.0, 2.0], &[1.0, 0.0]]),
            0.9,
        ).unwrap();
        let profile = ContractivityProfile::compute(&p, &t, 2000, NormKind::L2).unwrap().unwrap();
        let coarse = profile.n0(0.1).unwrap().unwrap();
        let fine = profile.n0(0.01).unwrap().unwrap();
        assert!(coarse <= fine);
        assert!(coarse > 0);
        // independent recomputation at n0 - 1 and n0
        let at = |n: usize| p.get(n).unwrap().operator().compose(&t.get(n)).unwrap().norm(NormKind::L2).unwrap();
        assert!(at(fine) <= profile.limit_bound + 0.01);
        assert!(at(fine - 1) > profile.limit_bound + 0.01);
    }

    #[test]
    fn constant_factors_substitute_exactly() {
        let f1 = OperatorSequence::constant(op(&[&[0.2, 0.3], &[0.1, 0.9]]));
        let f2 = OperatorSequence::constant(op(&[&[1.0, 0.5], &[0.0, 1.0]]));
        let samples = [v(&[1.0, 2.0]), v(&[-1.0, 0.5])];
        let e = check_composite_substitution(&[f1, f2], 2, &samples, 30, NormKind::L2, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass);
        assert!(e.details.contains("max distance 0.000e0"));
    }

    #[test]
    fn convergent_factor_difference_matches_expansion() {
        let a = op(&[&[0.5, 0.1], &[0.0, 0.4]]);
        let b = op(&[&[0.3, -0.2], &[0.1, 0.2]]);
        let c = op(&[&[0.8, 0.0], &[0.2, 0.6]]);
        let t1 = OperatorSequence::convergent(a.clone(), b.clone(), 0.9).unwrap();
        let t2 = OperatorSequence::constant(c.clone());
        let x = v(&[1.0, -2.0]);
        let kind = NormKind::L2;
        let mut series = Vec::new();
        for k in 0..300usize {
            // C (A + 0.9^k B) x − C A x = 0.9^k C B x
            let direct = c.compose(&t1.get(k)).unwrap().apply(&x).unwrap();
            let limit = c.compose(&a).unwrap().apply(&x).unwrap();
            let expansion = c.compose(&b).unwrap().apply(&x).unwrap().scale(0.9f64.powi(k as i32));
            let d = distance(&direct, &limit, kind).unwrap();
            assert!((d - expansion.norm(kind)).abs() <= 1e-12);
            assert!(d <= c.norm(kind).unwrap() * 0.9f64.powi(k as i32) * b.norm(kind).unwrap() * x.norm(kind) + 1e-12);
            series.push((k, d));
        }
        let e = check_composite_substitution(&[t1, t2], 0, &[x], 300, kind, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass, "{}", e.details);
        let fit = fit_decay(&series, FIT_FLOOR).unwrap();
        assert!((fit.rate - 0.9).abs() < 1e-6);
    }

    #[test]
    fn periodic_factor_is_kept_verbatim() {
        let p = OperatorSequence::periodic(vec![op(&[&[0.0, 1.0], &[1.0, 0.0]]), AffineOperator::identity(2)]).unwrap();
        let t = OperatorSequence::convergent(AffineOperator::scaled_identity(2, 0.5), op(&[&[1.0, 0.0], &[0.0, -1.0]]), 0.8).unwrap();
        let samples = [v(&[1.0, 0.0]), v(&[0.3, 0.7])];
        let e = check_composite_substitution(&[t, p], 1, &samples, 200, NormKind::L1, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass, "{}", e.details);
        assert!(e.details.contains("1 without a limit"));
    }

    #[test]
    fn mismatched_factor_dimensions_are_rejected() {
        let f1 = OperatorSequence::constant(AffineOperator::identity(2));
        let f2 = OperatorSequence::constant(AffineOperator::identity(3));
        assert!(matches!(
            check_composite_substitution(&[f1, f2], 0, &[], 5, NormKind::L2, &Tolerances::default()),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn continuity_of_constant_pair_is_exact() {
        let t = OperatorSequence::constant(op(&[&[0.5, 0.2], &[0.1, 0.3]]));
        let x = ConvergentVector::new(v(&[1.0, 1.0]), v(&[0.0, 0.0]), 0.5).unwrap();
        let e = check_limit_continuity(&t, &x, 20, NormKind::L2, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass);
        assert!(e.details.contains("final ||T_n x_n - T x|| = 0.000e0"));
    }

    #[test]
    fn continuity_decays_at_slower_rate() {
        let t = OperatorSequence::convergent(
            op(&[&[0.5, 0.2], &[0.1, 0.3]]).with_offset(&[1.0, 0.0]).unwrap(),
            op(&[&[0.4, 0.0], &[0.3, 0.2]]),
            0.9,
        ).unwrap();
        let x = ConvergentVector::new(v(&[1.0, -1.0]), v(&[2.0, 1.0]), 0.8).unwrap();
        let e = check_limit_continuity(&t, &x, 400, NormKind::L2, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass, "{}", e.details);
        let rate: f64 = e.details.rsplit(' ').next().unwrap().parse().unwrap();
        assert!(rate <= 0.9 + 1e-3);
    }

    #[test]
    fn compactness_with_equal_points() {
        let t = OperatorSequence::convergent(op(&[&[1.0, 2.0], &[0.0, 1.0]]), op(&[&[0.5, 0.0], &[0.0, 0.5]]), 0.7).unwrap();
        let z = v(&[1.0, 2.0]);
        let e = check_compactness_inequality(&t, &z, &z, 100, NormKind::LInf, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass);
        let e = check_compactness_inequality(&t, &z, &v(&[-3.0, 0.5]), 400, NormKind::L2, &Tolerances::default()).unwrap();
        assert_eq!(e.status, Status::Pass);
    }

    #[test]
    fn limitless_sequences_are_inapplicable() {
        let t = OperatorSequence::periodic(vec![AffineOperator::identity(2), AffineOperator::scaled_identity(2, 0.5)]).unwrap();
        let z = v(&[1.0, 0.0]);
        let tol = Tolerances::default();
        assert_eq!(check_compactness_inequality(&t, &z, &z, 5, NormKind::L2, &tol).unwrap().status, Status::Inapplicable);
        let x = ConvergentVector::new(z.clone(), z.clone(), 0.5).unwrap();
        assert_eq!(check_limit_continuity(&t, &x, 5, NormKind::L2, &tol).unwrap().status, Status::Inapplicable);
        let p = ProjectorSequence::identity(2);
        assert_eq!(check_asymptotic_contractivity(&p, &t, &[0.1], 5, NormKind::L2).unwrap().status, Status::Inapplicable);
    }
}
