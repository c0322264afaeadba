//! File formats, reports and the command line for `pdt-core`.

pub mod cli;
pub mod format;
pub mod report;
pub mod verify;
