//! Parsing, printing, JSON and the command driver behind the `diffmod`
//! binary.

pub mod json;
pub mod parse;
pub mod run;
pub mod selftest;

pub use parse::{parse_operator, parse_polynomial, parse_series, print};
pub use run::{render_text, run, Command, JobSpec, Report};
