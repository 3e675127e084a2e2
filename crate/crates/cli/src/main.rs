use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use operiter_core::scenario::{
    demo_config, demo_configs, run_batch, run_config, write_atomic, RunOutcome, ScenarioConfig, DEMO_NAMES,
    EXIT_ERROR,
};
use operiter_core::verify::Status;

#[derive(Debug, Parser)]
#[command(name = "operiter", version, about = "Run projected-iteration scenarios and verify their convergence bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario config; writes trace.csv and report.json.
    Run {
        config: PathBuf,
        #[arg(long, env = "OPERITER_OUT", default_value = "out")]
        out: PathBuf,
    },
    /// Run a built-in scenario.
    Demo {
        name: String,
        #[arg(long, env = "OPERITER_OUT", default_value = "out")]
        out: PathBuf,
    },
    /// Run every *.json config in a directory; writes one subdirectory per
    /// scenario and summary.json.
    Batch {
        dir: PathBuf,
        #[arg(long, env = "OPERITER_OUT", default_value = "out")]
        out: PathBuf,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List the built-in scenarios.
    ListDemos,
    /// Write every built-in scenario config into a directory.
    ExportDemos { dir: PathBuf },
}

fn print_outcome(outcome: &RunOutcome, out: &Path) {
    for e in &outcome.report.entries {
        let status = match e.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inapplicable => "N/A ",
        };
        println!("{status} {}: {}", e.check_name, e.details);
    }
    println!("outputs written to {}", out.display());
}

fn run_and_report(cfg: &ScenarioConfig, out: &Path) -> i32 {
    match run_config(cfg).and_then(|o| o.write(out).map(|()| o)) {
        Ok(outcome) => {
            print_outcome(&outcome, out);
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: Cli) -> i32 {
    match cli.command {
        Command::Run { config, out } => match ScenarioConfig::load(&config) {
            Ok(cfg) => run_and_report(&cfg, &out),
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        },
        Command::Demo { name, out } => match demo_config(&name) {
            Some(cfg) => run_and_report(&cfg, &out),
            None => {
                eprintln!("error: unknown demo `{name}`; available: {}", DEMO_NAMES.join(", "));
                EXIT_ERROR
            }
        },
        Command::Batch { dir, out, jobs } => match run_batch(&dir, &out, jobs) {
            Ok(summary) => {
                for s in &summary.scenarios {
                    match &s.error {
                        Some(e) => println!("{} {}: {e}", s.status, s.name),
                        None => println!("{} {}", s.status, s.name),
                    }
                }
                println!("summary written to {}", out.join("summary.json").display());
                summary.exit_code
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        },
        Command::ListDemos => {
            for name in DEMO_NAMES {
                println!("{name}");
            }
            0
        }
        Command::ExportDemos { dir } => {
            if let Err(e) = std::fs::create_dir_all(&dir) {
                eprintln!("error: {}: {e}", dir.display());
                return EXIT_ERROR;
            }
            for (name, cfg) in demo_configs() {
                if let Err(e) = write_atomic(&dir.join(format!("{name}.json")), cfg.to_json().as_bytes()) {
                    eprintln!("error: {e}");
                    return EXIT_ERROR;
                }
            }
            0
        }
    }
}

fn main() -> ExitCode {
    let code = execute(Cli::parse());
    ExitCode::from(code as u8)
}
