//! Command-line front end for `chshctx-core`: state parsing, TOML run
//! configuration, CSV/JSON scan tables and the reproduction report.

// `!(x <= tol)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod reproduce;
pub mod state;

pub use config::{Format, RunConfig};
pub use error::{CliError, Result};
pub use state::{parse_state, StateInput, StateSpec};
