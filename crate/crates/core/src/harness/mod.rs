//! Scenario loading, the check suites and report emission behind the
//! `verify` binary.

pub mod report;
pub mod scenario;
pub mod suites;

pub use report::{emit_report, CheckResult, Format, Report, Status, Summary, Witness};
pub use scenario::{ConnectionSpec, FibreParams, Mode, ProbeSpec, Samples, Scenario, Suite, PRESETS};
pub use suites::{
    run_courant_suite, run_linalg_suite, run_oracle, run_oracle_with, run_scenario, run_theorem1, LinalgHooks,
};
