//! Wild ramification invariants of covers of a formal surface restricted to arcs.

pub mod error;
pub mod field;
pub mod series;
pub mod arc;
pub mod localfield;
pub mod cover;
pub mod lab;

pub use error::{Error, Result};
pub use field::{Fe, Field, FieldParams};
pub use series::{BiSeries, LaurentSeries};
pub use arc::{Arc, BlowUp, Chart, HnExpansion, HnRow, Tangent};
pub use cover::{AsData, BranchData, CoverSpec, Divisor, RepSpec};
pub use localfield::{as_reduce, AsClass, AsKind, ElemAbelian, Filtration, PlFunction};

/// Default number of series coefficients carried by the CLI and experiments.
pub const DEFAULT_PRECISION: i64 = 256;
