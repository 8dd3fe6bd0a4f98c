//! Library surface of the verification front end: configuration parsing,
//! suite running, and report assembly. The `selfdual` binary is a thin
//! wrapper; the fuzz targets drive the parsing entry points directly.

pub mod config;
pub mod report;
pub mod suites;
