//! The benchmark harness: study configuration, the replication runner and
//! report generation.

pub mod config;
pub mod pipeline;
pub mod report;
pub mod runner;

pub use config::{ResolvedTest, StudyConfig, TestConfig, ALLOWED_M};
pub use pipeline::SummaryComputer;
pub use report::{emit_report, power_csv, power_svg};
pub use runner::{null_simulations, run_power_study, single_test, PowerRow, PowerTable};
