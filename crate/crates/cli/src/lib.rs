//! Driver for the `plf` command line: job configuration, the
//! build/lift/lfun pipeline with content-hashed artifacts, and the
//! verification suites.

pub mod commands;
pub mod config;
pub mod verify;

pub use commands::{field_validate, lfun_compute, lfun_eval, lift_for, symbol_build, symbol_lift, LfunOutcome, Paths};
pub use config::{CharacterConfig, JobConfig};
pub use verify::{run as run_suite, Check, SUITES};
