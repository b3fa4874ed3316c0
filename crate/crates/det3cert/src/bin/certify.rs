//! CLI harness: runs the registered checks and reports exact results.
//!
//! Exit status: 0 when every executed check passes, 1 when any check fails,
//! 2 on usage errors (unknown check id, unreadable fixture, bad flags).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use det3cert::certify::{
    check_ids, run_all, run_selected, CheckContext, CheckStatus, Report, DEFAULT_TRIALS,
};
use det3cert::forms::Form;

#[derive(Debug, Parser)]
#[command(name = "certify", version)]
#[command(about = "exact-arithmetic certifier for the 3x3 determinant orbit-boundary computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run registered checks and print a report
    RunAll {
        /// Seed for every sampled object (points, group elements)
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Trial count for the sampling-based checks
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,

        /// Write the JSON report to this path
        #[arg(long)]
        json: Option<PathBuf>,

        /// Run only the named checks (repeatable); default is all
        #[arg(long = "check", value_name = "ID")]
        checks: Vec<String>,

        /// Load the det3 fixture from a form text file instead of the
        /// built-in cubic (mutation testing hook)
        #[arg(long = "det3", value_name = "PATH")]
        det3_fixture: Option<PathBuf>,
    },

    /// List the registered check ids
    ListChecks,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListChecks => {
            for id in check_ids() {
                println!("{id}");
            }
            ExitCode::SUCCESS
        }
        Command::RunAll {
            seed,
            trials,
            json,
            checks,
            det3_fixture,
        } => match run(seed, trials, json, checks, det3_fixture) {
            Ok(report) => {
                if report.all_passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
        },
    }
}

fn run(
    seed: u64,
    trials: u32,
    json: Option<PathBuf>,
    checks: Vec<String>,
    det3_fixture: Option<PathBuf>,
) -> Result<Report, String> {
    let mut ctx = CheckContext::new(seed).with_trials(trials);
    if let Some(path) = det3_fixture {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read fixture {}: {e}", path.display()))?;
        let fixture = Form::from_text(&text).map_err(|e| format!("bad fixture: {e}"))?;
        if fixture.degree() != 3 {
            return Err(format!(
                "fixture must be a cubic, got degree {}",
                fixture.degree()
            ));
        }
        ctx = ctx.with_det3(fixture);
    }

    let report = if checks.is_empty() {
        run_all(&ctx)
    } else {
        run_selected(&ctx, &checks).map_err(|e| e.to_string())?
    };

    print_human(&report);

    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&report)
            .map_err(|e| format!("cannot serialize report: {e}"))?;
        std::fs::write(&path, body + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    Ok(report)
}

fn print_human(report: &Report) {
    for check in &report.checks {
        let tag = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
        };
        println!(
            "{tag:<12} {:<32} [{}] observed: {} | expected: {}",
            check.check_id, check.lemma, check.observed, check.expected
        );
        if check.status != CheckStatus::Pass {
            if let Some(w) = &check.witness {
                println!("             witness: {w}");
            }
        }
    }
    let s = &report.summary;
    println!(
        "summary: {} checks, {} pass, {} fail, {} inconclusive (seed {}, trials {})",
        s.total, s.pass, s.fail, s.inconclusive, report.seed, report.trials
    );
}
