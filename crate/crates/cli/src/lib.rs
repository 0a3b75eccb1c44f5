//! Parsing, dispatch, and reporting for the `mivote` binary.

pub mod format;
pub mod report;
pub mod run;
