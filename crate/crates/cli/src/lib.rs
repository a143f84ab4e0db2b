//! File formats and batch reports behind the `matroid` command.

pub mod format;
pub mod report;
