//! Verification harness for `finslerlab-core`: a registry of sixteen
//! residual checks, a flat config format and a JSON-lines report.

pub mod config;
pub mod objects;
pub mod probes;
pub mod registry;
pub mod runner;

pub use config::{parse_config, RunConfig};
pub use registry::{list_checks, CheckSpec};
pub use runner::{all_pass, render, run_checks, CheckResult};
