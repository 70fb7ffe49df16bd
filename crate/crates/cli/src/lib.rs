//! Orchestration for the `rdl` command-line tool: spec generation, analyses, exhaustive
//! oracles and the acceptance experiments, with headed, reproducible output files.

pub mod commands;
pub mod experiments;
pub mod header;
