//! Command-line front end for the `ucoef` crate: argument definitions,
//! subcommand implementations and output formats.

pub mod cli;
pub mod commands;
pub mod format;
