//! Everything around the solver that touches the outside world: parameter
//! files, sweep tables in CSV, and the validation report behind `dkp validate`.

// `!(lo < hi)` also rejects NaN bounds
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod sweep;
pub mod table;
pub mod validate;

pub use error::{CliError, Result};

/// Version string recorded in every emitted table.
pub const TOOL_VERSION: &str = concat!("dkp ", env!("CARGO_PKG_VERSION"));
