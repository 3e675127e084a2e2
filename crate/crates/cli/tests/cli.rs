use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn operiter(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_operiter"))
        .args(args)
        .current_dir(cwd)
        .env_remove("OPERITER_OUT")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_json(path: &Path, v: &serde_json::Value) {
    fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

fn period_two_config() -> serde_json::Value {
    serde_json::json!({
        "dim": 2,
        "t_sequence": {
            "kind": "periodic",
            "operators": [
                {"matrix": [[0.5, 0.0], [0.0, 0.5]], "offset": [1.0, 0.0]},
                {"matrix": [[0.5, 0.0], [0.0, 0.5]], "offset": [0.0, 1.0]}
            ]
        },
        "x0": [0.0, 0.0],
        "max_k": 200,
        "strip_search": {"K_target": 0.5, "max_gap": 2, "horizon": 100},
        "checks": ["check_cluster_points", "check_strip_decay"]
    })
}

#[test]
fn run_writes_trace_and_report() {
    let dir = tempfile::tempdir().unwrap();
    write_json(&dir.path().join("s.json"), &period_two_config());
    let o = operiter(&["run", "s.json", "--out", "res"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS check_cluster_points"));

    let csv = fs::read_to_string(dir.path().join("res/trace.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("k,"), "{header}");
    assert_eq!(csv.lines().count(), 202);

    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("res/report.json")).unwrap()).unwrap();
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert!(entries.iter().all(|e| e["status"] == "Pass"));
    assert_eq!(report["scenario_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    write_json(&dir.path().join("s.json"), &period_two_config());
    let o = Command::new(env!("CARGO_BIN_EXE_operiter"))
        .args(["run", "s.json"])
        .current_dir(dir.path())
        .env("OPERITER_OUT", "from_env")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(dir.path().join("from_env/report.json").is_file());
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = period_two_config();
    cfg["tolerances"] = serde_json::json!({"limit_tol": 1e-300, "separation_tol": 1e-300});
    cfg["max_k"] = serde_json::json!(20);
    cfg["checks"] = serde_json::json!(["check_cluster_points"]);
    write_json(&dir.path().join("s.json"), &cfg);
    let o = operiter(&["run", "s.json", "--out", "res"], dir.path());
    assert_eq!(o.status.code(), Some(1), "{}\n{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("FAIL check_cluster_points"));
    assert!(dir.path().join("res/report.json").is_file());
}

#[test]
fn strip_target_of_one_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = period_two_config();
    cfg["strip_search"]["K_target"] = serde_json::json!(1.0);
    write_json(&dir.path().join("s.json"), &cfg);
    let o = operiter(&["run", "s.json", "--out", "res"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("strip_search.K_target"), "{}", stderr(&o));
    assert!(!dir.path().join("res").exists());
}

#[test]
fn wrong_start_dimension_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = period_two_config();
    cfg["x0"] = serde_json::json!([0.0, 0.0, 0.0]);
    write_json(&dir.path().join("s.json"), &cfg);
    let o = operiter(&["run", "s.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x0"), "{}", stderr(&o));
}

#[test]
fn unknown_fields_and_missing_files_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = period_two_config();
    cfg["max_iterations"] = serde_json::json!(5);
    write_json(&dir.path().join("s.json"), &cfg);
    let o = operiter(&["run", "s.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("max_iterations"), "{}", stderr(&o));

    let o = operiter(&["run", "absent.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("absent.json"), "{}", stderr(&o));
}

#[test]
fn unknown_demo_lists_the_available_ones() {
    let dir = tempfile::tempdir().unwrap();
    let o = operiter(&["demo", "theorem99"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("theorem99") && err.contains("theorem21iii") && err.contains("lemma34"), "{err}");
}

#[test]
fn list_demos_prints_every_name() {
    let dir = tempfile::tempdir().unwrap();
    let o = operiter(&["list-demos"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn demo_reports_the_period_two_cluster_points() {
    let dir = tempfile::tempdir().unwrap();
    let o = operiter(&["demo", "theorem21iii", "--out", "res"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("res/report.json")).unwrap()).unwrap();
    let entry = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["check_name"] == "check_cluster_points")
        .unwrap();
    let details = entry["details"].as_str().unwrap();
    assert!(details.contains("6.666666666666666") && details.contains("1.333333333333333"), "{details}");
}

#[test]
fn batch_isolates_a_corrupted_config() {
    let dir = tempfile::tempdir().unwrap();
    let configs = dir.path().join("configs");
    fs::create_dir(&configs).unwrap();
    write_json(&configs.join("a_good.json"), &period_two_config());
    fs::write(configs.join("b_broken.json"), "{\"dim\": 2, \"t_sequence\": ").unwrap();
    fs::write(configs.join("notes.txt"), "ignored").unwrap();

    let o = operiter(&["batch", "configs", "--out", "res", "--jobs", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("res/summary.json")).unwrap()).unwrap();
    let scenarios = summary["scenarios"].as_array().unwrap();
    assert_eq!(scenarios.len(), 2);
    assert_eq!(scenarios[0]["name"], "a_good");
    assert_eq!(scenarios[0]["status"], "pass");
    assert_eq!(scenarios[1]["name"], "b_broken");
    assert_eq!(scenarios[1]["status"], "error");
    assert_eq!(scenarios[1]["config"], "b_broken.json");
    assert!(!scenarios[1]["error"].as_str().unwrap().is_empty());
    assert!(dir.path().join("res/a_good/trace.csv").is_file());
    assert!(!dir.path().join("res/b_broken").exists());
}

#[test]
fn batch_with_a_failing_scenario_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let configs = dir.path().join("configs");
    fs::create_dir(&configs).unwrap();
    write_json(&configs.join("good.json"), &period_two_config());
    let mut bad = period_two_config();
    bad["tolerances"] = serde_json::json!({"limit_tol": 1e-300, "separation_tol": 1e-300});
    bad["max_k"] = serde_json::json!(20);
    bad["checks"] = serde_json::json!(["check_cluster_points"]);
    write_json(&configs.join("tight.json"), &bad);
    let o = operiter(&["batch", "configs", "--out", "res"], dir.path());
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn batch_of_an_empty_directory_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("empty")).unwrap();
    let o = operiter(&["batch", "empty", "--out", "res"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"), "{}", stderr(&o));
}

#[test]
fn exported_demos_rerun_identically() {
    let dir = tempfile::tempdir().unwrap();
    let o = operiter(&["export-demos", "demos"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    for name in ["theorem21i", "lemma23", "theorem35"] {
        let exported = dir.path().join("demos").join(format!("{name}.json"));
        let a = operiter(&["run", exported.to_str().unwrap(), "--out", "from_file"], dir.path());
        let b = operiter(&["demo", name, "--out", "built_in"], dir.path());
        assert_eq!(a.status.code(), Some(0), "{name}: {}", stdout(&a));
        assert_eq!(b.status.code(), Some(0), "{name}: {}", stdout(&b));
        for file in ["trace.csv", "report.json"] {
            let x = fs::read(dir.path().join("from_file").join(file)).unwrap();
            let y = fs::read(dir.path().join("built_in").join(file)).unwrap();
            assert!(x == y, "{name}/{file} differs between file and built-in runs");
        }
    }
}
