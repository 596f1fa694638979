//! Command-line front end: JSON problem files in, strata tables, verdicts,
//! sweeps and finite-field censuses out.

pub mod app;
pub mod commands;
pub mod error;
pub mod problem;
pub mod table;

pub use commands::{cmd_oracle_census, cmd_strata, cmd_sweep, cmd_verdict, SweepRow};
pub use error::CliError;
pub use problem::{parse_problem, parse_problem_str, ProblemSpec};
pub use table::{Format, StrataRow, StrataTable};
