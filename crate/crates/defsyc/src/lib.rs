//! File formats, random instances, benchmarks and report types for the
//! `defsyc` command line tool. The algorithms live in `defsyc-core`.

pub mod bench;
pub mod budget;
pub mod format;
pub mod generate;
pub mod report;
