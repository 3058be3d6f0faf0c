//! Scenario generation, benchmark execution and reporting.

pub mod report;
pub mod run;
pub mod scenario;
pub mod svg;

pub use report::{BenchReport, ExcludedTask, ReportRow, TaskResult};
pub use run::{run_benchmark, run_tasks, BenchRuns, TaskRun};
pub use scenario::{generate_scenarios, parse_scenarios, write_scenarios, Scenario};
pub use svg::render_svg;
