use std::fs;

use nalgebra::{DMatrix, DVector};
use operiter_core::scenario::{demo_config, demo_configs, run_config, ScenarioConfig, DEMO_NAMES};
use operiter_core::verify::{fixed_point_direct, kernel_basis, ContractivityProfile, Status};
use operiter_core::{AffineOperator, Error, NormKind};

#[test]
fn every_demo_passes() {
    for (name, cfg) in demo_configs() {
        let outcome = run_config(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!outcome.report.entries.is_empty(), "{name}");
        for e in &outcome.report.entries {
            assert_eq!(e.status, Status::Pass, "{name}: {}: {}", e.check_name, e.details);
        }
    }
}

#[test]
fn rotation_demo_bound_has_positive_slack() {
    let outcome = run_config(&demo_config("theorem21i").unwrap()).unwrap();
    let mu = 2f64.sqrt();
    let bound = 4.0 * mu * outcome.scenario.x0.norm(NormKind::L2);
    let max_dz = outcome.trace.steps.iter().filter_map(|s| s.d_z).fold(0.0, f64::max);
    assert!(max_dz > 0.5 && max_dz < bound, "{max_dz} vs {bound}");
    let entry = outcome.report.entry("check_bound_nonexpansive").unwrap();
    assert!(entry.max_violation < -1.0, "{}", entry.max_violation);
}

#[test]
fn convergent_demo_reaches_projected_fixed_point() {
    let outcome = run_config(&demo_config("theorem21ii").unwrap()).unwrap();
    // (I − 0.5 I) x = (1, 1) and P keeps the first coordinate.
    let z = outcome.trace.last().z.to_vec();
    assert!((z[0] - 2.0).abs() < 1e-9 && z[1].abs() < 1e-12, "{z:?}");
}

#[test]
fn contractivity_threshold_is_tight() {
    let outcome = run_config(&demo_config("lemma23").unwrap()).unwrap();
    let s = &outcome.scenario;
    let profile = ContractivityProfile::compute(&s.p_seq, &s.t_seq, 10_000, NormKind::L2).unwrap().unwrap();
    let p = s.p_seq.limit().unwrap();
    let t = s.t_seq.limit().unwrap();
    let limit_bound = p.matrix().singular_values().max() * t.matrix().singular_values().max();
    assert!((profile.limit_bound - limit_bound).abs() < 1e-12);
    for delta in [0.1, 0.01] {
        let n0 = profile.n0(delta).unwrap().unwrap();
        assert!(n0 > 0);
        let norm_at = |n: usize| {
            let pn = s.p_seq.get(n).unwrap();
            (pn.matrix() * s.t_seq.get(n).matrix()).singular_values().max()
        };
        assert!(norm_at(n0 - 1) > limit_bound + delta);
        assert!(norm_at(n0) <= limit_bound + delta);
    }
}

#[test]
fn kernel_of_the_remark_demo_is_one_dimensional() {
    let cfg = demo_config("remark22").unwrap();
    let s = cfg.build().unwrap();
    let p = s.p_seq.get(0).unwrap();
    let basis = kernel_basis(&p, &s.t_seq.get(0)).unwrap();
    assert_eq!(basis.ncols(), 1);
    let v = basis.column(0);
    assert!((v[0] - v[1]).abs() < 1e-12, "kernel of [[1, -1], [0, 0]] is spanned by (1, 1): {v}");
}

#[test]
fn strip_demo_collapses_onto_the_period_fixed_point() {
    let outcome = run_config(&demo_config("theorem35").unwrap()).unwrap();
    let t = &outcome.scenario.t_seq;
    let period = t.composite(0, 2).unwrap();
    let m = DMatrix::identity(2, 2) - period.matrix();
    let oracle: DVector<f64> = m.lu().solve(period.offset()).unwrap();
    let direct = fixed_point_direct(&period).unwrap();
    assert!((direct.as_dvector() - &oracle).amax() < 1e-12);
    let x = &outcome.trace.steps[outcome.trace.len() - 1];
    assert_eq!(x.k % 2, 0);
    assert!((x.x.as_dvector() - &oracle).amax() < 1e-9);
}

#[test]
fn configs_round_trip_through_json() {
    for name in DEMO_NAMES {
        let cfg = demo_config(name).unwrap();
        let again = ScenarioConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(again, cfg, "{name}");
        assert_eq!(again.digest(), cfg.digest());
    }
}

#[test]
fn outputs_are_written_without_leftovers() {
    let dir = tempfile::tempdir().unwrap();
    let outcome = run_config(&demo_config("lemma34").unwrap()).unwrap();
    outcome.write(dir.path()).unwrap();
    outcome.write(dir.path()).unwrap();
    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["report.json", "trace.csv"]);
    assert_eq!(fs::read_to_string(dir.path().join("report.json")).unwrap(), outcome.report.to_json());
}

#[test]
fn config_errors_name_the_field() {
    let mut cfg = demo_config("theorem21iii").unwrap();
    cfg.strip_search.as_mut().unwrap().k_target = 1.0;
    match cfg.build() {
        Err(Error::Config { field, .. }) => assert_eq!(field, "strip_search.K_target"),
        other => panic!("{other:?}"),
    }
    let err = ScenarioConfig::from_json(r#"{"dim": 2, "t_sequence": {"kind": "constant", "operator": {"matrix": [[1.0, 0.0], [0.0]]}}, "x0": [0.0, 0.0], "checks": ["check_limit_continuity"]}"#)
        .and_then(|c| c.build().map(|_| ()))
        .unwrap_err();
    assert!(err.to_string().contains("t_sequence.operator.matrix"), "{err}");
    let op = AffineOperator::identity(2);
    assert!(matches!(fixed_point_direct(&op), Err(Error::NonContractive { .. })));
}
