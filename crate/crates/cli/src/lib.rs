//! Scenario runner for the guided-photon library.
//!
//! A scenario is a flat JSON document selected by its `kind` key,
//! validated strictly (unknown and duplicate keys are rejected), run
//! deterministically under a single ChaCha8 seed, and emitted as CSV
//! and/or JSON tables with embedded pass/fail verdicts. Exit codes are
//! scriptable: 0 success, 1 assertion failure, 2 config error, 3
//! numerical error.

pub mod checks;
pub mod config;
pub mod emit;
pub mod scenario;

pub use config::{parse_config, ConfigError, ScenarioConfig};
pub use emit::{emit, OutputFormat};
pub use scenario::{run, Column, RunError, ScenarioResult, Verdict};
