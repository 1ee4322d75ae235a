//! IO, CSV output and the command-line front end for `fading-limits-core`.
// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod csv;
mod error;
pub mod parallel;
pub mod units;

pub use error::{CliError, ExitCode};
