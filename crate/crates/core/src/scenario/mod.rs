//! Scenario files, the experiment runner and its reports.

mod catalog;
mod config;
pub mod expr;
mod runner;
mod suite;

pub use catalog::list_catalog;
pub use config::{
    BoundarySpec, DiagnosticKind, DomainSpec, Expectations, OutputSpec, Scenario, SolverKind,
    SolverSpec, SurfaceSpec, COEFFICIENT_NAMES,
};
pub use expr::Expr;
pub use runner::{
    random_mobius, run_file, run_scenario, Check, DiagnosticEntry, GridInfo, Provenance, Report,
    RunOptions, Status, Timing,
};
pub use suite::{run_suite, RowStatus, SuiteReport, SuiteRow};
