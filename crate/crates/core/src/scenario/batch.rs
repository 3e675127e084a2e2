//! Runs a directory of scenario configs, possibly in parallel.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::verify::Status;

use super::config::ScenarioConfig;
use super::run::{run_config, write_atomic, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckStatus {
    pub check_name: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchEntry {
    pub name: String,
    pub config: String,
    pub exit_code: i32,
    pub status: &'static str,
    pub checks: Vec<CheckStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub scenarios: Vec<BatchEntry>,
    pub exit_code: i32,
}

impl BatchSummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serialization is infallible");
        s.push('\n');
        s
    }
}

/// `*.json` files directly inside `dir`, sorted by file name.
pub fn scenario_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn run_one(path: &Path, out: &Path) -> BatchEntry {
    let stem = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let config = path.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let result = ScenarioConfig::load(path).and_then(|cfg| {
        let outcome = run_config(&cfg)?;
        outcome.write(&out.join(&stem))?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            let exit_code = outcome.exit_code();
            BatchEntry {
                name: stem,
                config,
                exit_code,
                status: if exit_code == EXIT_PASS { "pass" } else { "fail" },
                checks: outcome
                    .report
                    .entries
                    .iter()
                    .map(|e| CheckStatus {
                        check_name: e.check_name.clone(),
                        status: e.status,
                    })
                    .collect(),
                error: None,
            }
        }
        Err(e) => BatchEntry {
            name: stem,
            config,
            exit_code: EXIT_ERROR,
            status: "error",
            checks: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

/// Runs every config in `dir`, writing each scenario's outputs to
/// `out/<file stem>/` and the aggregate to `out/summary.json`. The summary
/// exit code is the largest individual one.
pub fn run_batch(dir: &Path, out: &Path, jobs: Option<usize>) -> Result<BatchSummary> {
    let files = scenario_files(dir)?;
    if files.is_empty() {
        return Err(Error::Io {
            path: dir.display().to_string(),
            message: "no scenario configs (*.json) found".into(),
        });
    }
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Io {
            path: out.display().to_string(),
            message: format!("cannot start worker pool: {e}"),
        })?;
    let scenarios: Vec<BatchEntry> = pool.install(|| files.par_iter().map(|f| run_one(f, out)).collect());
    let exit_code = scenarios.iter().map(|s| s.exit_code).max().unwrap_or(EXIT_FAIL);
    let summary = BatchSummary { scenarios, exit_code };
    write_atomic(&out.join("summary.json"), summary.to_json().as_bytes())?;
    Ok(summary)
}
