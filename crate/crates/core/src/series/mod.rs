//! Truncated univariate Laurent series and bivariate power series.

mod biseries;
mod laurent;
mod literal;

pub use biseries::BiSeries;
pub use laurent::LaurentSeries;
pub use literal::{format_biseries, format_series, parse_biseries, parse_series};
