//! Raw criterion values: field errors, force coefficients, relative errors
//! and rank correlations.

pub mod criteria;
pub mod field;
pub mod forces;
pub mod report;
pub mod spearman;

pub use criteria::{Criterion, FieldCriteria, FieldCriterion, NodeSubset};
pub use field::{field_error, mean_relative_error, ErrorAccumulator, ErrorKind, RELATIVE_ERROR_EPSILON};
pub use forces::{force_coefficients, ForceCoefficients, SurfaceContour};
pub use report::{coefficient_series, evaluate_split, CoefficientSeries, MetricsReport, SplitMetrics};
pub use spearman::{average_ranks, spearman, Spearman};
