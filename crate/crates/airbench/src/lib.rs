//! File formats, benchmark runner, leaderboard and command line for the
//! airfoil surrogate benchmark. The numerics live in `airbench-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod io;

pub use airbench_core as core;
pub use error::{Error, Result};
