//! IO, file formats, output schemas, and benchmark protocol for the
//! community-count estimator in `sbmk-core`.

pub mod commands;
pub mod formats;
pub mod output;
pub mod protocol;
