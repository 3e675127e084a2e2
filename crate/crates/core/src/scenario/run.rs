//! Executes a scenario: iteration, strip search, configured checks, outputs.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::iteration::{find_contractive_strips, iterate, IterationTrace, StripSchedule};
use crate::operator::OperatorSequence;
use crate::random::{random_vector, sub_rng};
use crate::space::Vector;
use crate::verify::{
    self, anchors, check_asymptotic_contractivity, check_bound_nonexpansive, check_cluster_points,
    check_compactness_inequality, check_composite_substitution, check_convergent_contractive,
    check_kernel_preimage_degeneracy, check_limit_continuity, check_strip_decay, ClusterSet,
    ConvergentVector, ReportEntry, VerificationReport,
};

use super::config::{build_t_sequence, CheckName, Scenario, ScenarioConfig, KERNEL_STREAM, SAMPLE_STREAM};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub const DEFAULT_LIMIT_HORIZON: usize = 400;
pub const DEFAULT_CONTRACTIVITY_HORIZON: usize = 10_000;
pub const DEFAULT_DELTAS: [f64; 2] = [0.1, 0.01];
const DEFAULT_SAMPLE_COUNT: usize = 4;
const DEFAULT_X_RATE: f64 = 0.8;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub scenario: Scenario,
    pub trace: IterationTrace,
    pub schedule: Option<StripSchedule>,
    pub clusters: Option<ClusterSet>,
    pub report: VerificationReport,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.any_failed() {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }

    pub fn trace_csv(&self) -> String {
        let boundaries = self.schedule.as_ref().map_or(&[][..], |s| &s.boundaries[..]);
        self.trace.to_csv(boundaries)
    }

    /// Writes `trace.csv` and `report.json` into `dir`, each atomically.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_atomic(&dir.join("trace.csv"), self.trace_csv().as_bytes())?;
        write_atomic(&dir.join("report.json"), self.report.to_json().as_bytes())
    }
}

/// Writes to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Io {
            path: path.display().to_string(),
            message: "not a file path".into(),
        })?
        .to_string_lossy();
    let tmp = path.with_file_name(format!(".{file_name}.tmp"));
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(contents).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn run_config(config: &ScenarioConfig) -> Result<RunOutcome> {
    run_scenario(&config.build()?)
}

fn sample_points(s: &Scenario, explicit: Option<&Vec<Vec<f64>>>, count: usize) -> Result<Vec<Vector>> {
    if let Some(rows) = explicit {
        return rows.iter().map(|r| Vector::new(r.clone())).collect();
    }
    let dim = s.config.dim;
    Ok(match s.config.seed {
        Some(seed) => {
            let mut rng = sub_rng(seed, SAMPLE_STREAM);
            (0..count).map(|_| random_vector(&mut rng, dim, 1.0)).collect()
        }
        None => {
            let mut pts: Vec<Vector> = (0..dim).map(|i| Vector::basis(dim, i)).collect();
            pts.push(s.x0.clone());
            pts
        }
    })
}

pub fn run_scenario(s: &Scenario) -> Result<RunOutcome> {
    let cfg = &s.config;
    let kind = cfg.norm_kind;
    let tol = &s.tolerances;
    let params = &cfg.params;
    let trace = iterate(&s.t_seq, &s.p_seq, &s.x0, &s.options, kind)?;

    let schedule = match &cfg.strip_search {
        None => Ok(None),
        Some(search) => find_contractive_strips(&s.t_seq, search.k_target, search.max_gap, search.horizon, kind).map(Some),
    };

    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let mut entries = Vec::with_capacity(checks.len());
    let mut clusters = None;
    let limit_horizon = params.horizon.unwrap_or(DEFAULT_LIMIT_HORIZON);
    for check in checks {
        let entry: ReportEntry = match check {
            CheckName::BoundNonexpansive => check_bound_nonexpansive(&trace, &s.t_seq, &s.p_seq, params.mu, tol)?,
            CheckName::ConvergentContractive => check_convergent_contractive(&trace, &s.t_seq, &s.p_seq, tol)?,
            CheckName::ClusterPoints => {
                let (entry, set) = check_cluster_points(&trace, &s.t_seq, &s.p_seq, params.period, tol)?;
                clusters = set;
                entry
            }
            CheckName::KernelPreimage => {
                let seed = cfg.seed.map_or(0, |seed| sub_rng(seed, KERNEL_STREAM).random::<u64>());
                check_kernel_preimage_degeneracy(&*s.p_seq.get(0)?, &s.t_seq.get(0), seed, kind, tol)?
            }
            CheckName::AsymptoticContractivity => {
                let deltas = params.deltas.clone().unwrap_or_else(|| DEFAULT_DELTAS.to_vec());
                let horizon = params.horizon.unwrap_or(DEFAULT_CONTRACTIVITY_HORIZON);
                check_asymptotic_contractivity(&s.p_seq, &s.t_seq, &deltas, horizon, kind)?
            }
            CheckName::CompositeSubstitution => {
                let factors: Vec<OperatorSequence> = match &params.factors {
                    Some(specs) => specs
                        .iter()
                        .enumerate()
                        .map(|(i, f)| build_t_sequence(f, cfg.dim, cfg.seed, kind, &format!("params.factors[{i}]")))
                        .collect::<Result<_>>()?,
                    None => vec![s.t_seq.clone()],
                };
                let samples = sample_points(s, params.samples.as_ref(), DEFAULT_SAMPLE_COUNT)?;
                check_composite_substitution(&factors, params.window.unwrap_or(0), &samples, limit_horizon, kind, tol)?
            }
            CheckName::LimitContinuity => {
                let x_seq = match &params.x_sequence {
                    Some(x) => ConvergentVector::new(
                        Vector::new(x.limit.clone())?,
                        Vector::new(x.direction.clone())?,
                        x.rate,
                    )?,
                    None => ConvergentVector::new(s.x0.clone(), Vector::new(vec![1.0; cfg.dim])?, DEFAULT_X_RATE)?,
                };
                check_limit_continuity(&s.t_seq, &x_seq, limit_horizon, kind, tol)?
            }
            CheckName::CompactnessInequality => {
                let (z_i, z_j) = match &params.z_pair {
                    Some([a, b]) => (Vector::new(a.clone())?, Vector::new(b.clone())?),
                    None => (s.x0.clone(), trace.last().z.clone()),
                };
                check_compactness_inequality(&s.t_seq, &z_i, &z_j, limit_horizon, kind, tol)?
            }
            CheckName::StripDecay => match &schedule {
                Ok(Some(sched)) => {
                    let count = cfg.strip_search.as_ref().map_or(DEFAULT_SAMPLE_COUNT, |x| x.samples);
                    let samples = sample_points(s, None, count)?;
                    check_strip_decay(&s.t_seq, sched, &samples, kind, tol)?
                }
                Ok(None) => unreachable!("strip_search presence is validated"),
                Err(e) => ReportEntry::inapplicable(
                    verify::STRIP_DECAY,
                    anchors::STRIP_DECAY,
                    format!("no contractive strip schedule: {e}"),
                ),
            },
        };
        entries.push(entry);
    }

    let schedule = match schedule {
        Ok(s) => s,
        Err(Error::NoContractiveStrip { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(RunOutcome {
        scenario: s.clone(),
        trace,
        schedule,
        clusters,
        report: VerificationReport {
            scenario_digest: s.digest.clone(),
            entries,
        },
    })
}
