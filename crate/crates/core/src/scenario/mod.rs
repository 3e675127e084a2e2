//! Config-driven scenario runs: parsing, built-in demos, execution, batches.

mod batch;
mod config;
mod demos;
mod run;

pub use batch::{run_batch, scenario_files, BatchEntry, BatchSummary, CheckStatus};
pub use config::{
    CheckName, CheckParams, OperatorSpec, PSequenceSpec, ProjectorSpec, RandomTag, Scenario, ScenarioConfig,
    StripSearchSpec, TSequenceSpec, TailSpec, ToleranceSpec, X0Spec, XSequenceSpec,
};
pub use demos::{demo_config, demo_configs, DEMO_NAMES};
pub use run::{
    run_config, run_scenario, write_atomic, RunOutcome, DEFAULT_CONTRACTIVITY_HORIZON, DEFAULT_DELTAS,
    DEFAULT_LIMIT_HORIZON, EXIT_ERROR, EXIT_FAIL, EXIT_PASS,
};
