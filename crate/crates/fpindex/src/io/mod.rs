mod expr;
mod report;
mod scenario;

pub use expr::{parse_expression, parse_univariate, MAX_DEGREE, MAX_EXPONENT};
pub use report::*;
pub use scenario::{chart_germ, fixture, fixture_text, parse_scenario, GermEntry, GermSource, Scenario, FIXTURES};
