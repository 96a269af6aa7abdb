//! Command-line front end: JSON file formats and the `check`, `generate`,
//! `scan` and `version` commands.

pub mod commands;
pub mod format;

pub use commands::{run, Outcome};
pub use format::{MatrixFile, ReportFile, ScanFile};
