//! Batch front end: JSON documents in, one canonical JSON report out.

pub mod report;
pub mod run;
pub mod schema;

pub use report::{canonical, write_report};
pub use run::{exit_code, main_with, run, Command, RunConfig};
