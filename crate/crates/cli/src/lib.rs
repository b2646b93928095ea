//! File formats, reports and command logic behind the `kundt` binary.

pub mod commands;
pub mod file;
pub mod report;
