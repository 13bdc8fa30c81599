//! `verify`: runs a preset or scenario file and emits a report.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gctwistor::harness::{emit_report, run_scenario, Format, Mode, Scenario, PRESETS};

#[derive(Parser)]
#[command(name = "verify", about = "Exact checks of generalized complex and twistor identities")]
struct Cli {
    /// Preset name or path to a scenario JSON file
    #[arg(help = format!("Preset ({}) or path to a scenario JSON file", PRESETS.join(", ")))]
    scenario: String,

    /// Override the scenario's arithmetic mode
    #[arg(long, value_enum)]
    mode: Option<Mode>,

    /// Override the scenario's seed
    #[arg(long)]
    seed: Option<u64>,

    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut sc = match Scenario::resolve(&cli.scenario) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(m) = cli.mode {
        sc.mode = m;
    }
    if let Some(s) = cli.seed {
        sc.seed = s;
    }
    let report = match run_scenario(&sc) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match emit_report(&report, cli.format, cli.out.as_deref()) {
        Ok(text) if cli.out.is_none() => print!("{text}"),
        Ok(_) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code())
}
