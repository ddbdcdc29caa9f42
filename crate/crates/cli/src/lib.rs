//! Command-line front end: argument parsing, report assembly and the
//! canonical JSON/text rendering.

pub mod app;
pub mod report;
