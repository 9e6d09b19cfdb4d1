//! File formats, reports and the `charsum` command line over
//! `charsum-core`.

pub mod cli;
pub mod config;
pub mod report;
pub mod source;
pub mod table;

pub use config::RunConfig;
