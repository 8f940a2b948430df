//! Core of the airfoil surrogate benchmark.
//!
//! Everything in this crate is pure computation on in-memory values and
//! builds without `std` (an allocator is required). File formats, process
//! orchestration and the command line live in the `airbench` crate.
//!
//! Modules:
//! - [`model`]: samples, field sets, datasets, predictions and their validation.
//! - [`synthflow`]: analytic potential flow around Joukowski airfoils used as ground truth.
//! - [`metrics`]: field errors, force coefficients, Spearman correlation, split reports.
//! - [`scoring`]: threshold classification and the weighted three-category score.
//! - [`baselines`]: oracle, constant and k-nearest-neighbour predictors.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod baselines;
pub mod error;
pub mod geometry;
pub mod math;
pub mod metrics;
pub mod model;
pub mod scoring;
pub mod serde_real;
pub mod synthflow;

pub use error::{Error, Result};
