//! Experiment harness for maximum-eigenvalue minimization: seeded instance
//! generation, the gap-checked solve protocol, per-iteration traces and
//! non-adaptive versus hybrid comparison tables.

mod compare;
mod config;
mod run;
mod trace;

pub use compare::{compare_methods, reduction_percent, tabulate, CompareRow, CompareTable, Comparison};
pub use config::{
    RunConfig, StrategyKind, DEFAULT_ALPHA, DEFAULT_DENSITY, DEFAULT_EPS, DEFAULT_GAP_CHECK_PERIOD,
    DEFAULT_KAPPA, DEFAULT_REPEATS, DENSE_PREFIX,
};
pub use run::{
    aggressive_worst_case_iterations, run_benchmark, run_single, theory_iterations, trace_path_for,
    worst_case_iterations, write_json, Averages, RepeatOutcome, RepeatReport, RepeatStatus, RunReport,
};
pub use trace::{emit_trace, summary_path_for, trace_row, TRACE_HEADER};
