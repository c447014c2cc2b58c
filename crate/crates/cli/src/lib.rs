//! Library surface of the command-line front end: job parsing, dispatch,
//! and report emission. The binary in `main.rs` is a thin wrapper.

pub mod job;
pub mod report;
pub mod run;

pub use job::{JobPayload, JobSpec};
pub use report::Report;
pub use run::{execute, RunError};
