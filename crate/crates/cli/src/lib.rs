//! Command-line front end: run configuration, structure table cache,
//! corpus manifests and verification reports.

pub mod commands;
pub mod config;
pub mod manifest;
pub mod report;
