//! Library surface of the `conic` command line: configuration loading,
//! deterministic report rendering, and the command runners. The binary in
//! `main.rs` is a thin argument-parsing shell over these modules, which
//! keeps every piece unit- and integration-testable.

pub mod commands;
pub mod config;
pub mod json;
pub mod report;
