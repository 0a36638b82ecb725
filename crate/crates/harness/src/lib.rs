//! Operational surface of the orbit-summability toolkit: problem configs,
//! the built-in registry, run orchestration, trace persistence, and the
//! pieces the `orbitsum` CLI is built from.

pub mod config;
pub mod emit;
pub mod error;
pub mod registry;
pub mod run;

pub use config::{compile, load_problems, parse_problem, parse_verdict, Driver, Problem,
    ProblemConfig};
pub use emit::{emit_trace, parse_csv_trace, trace_to_csv, trace_to_json, TraceFormat};
pub use error::{HarnessError, Result};
pub use registry::{registry, registry_problem, FIXTURES};
pub use run::{run_problem, RunOutcome, RunReport};
