//! Batch front-end for `f2bal`: input files, analysis reports and generators.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{build_report, cmd_analyze, cmd_gen, cmd_oracle, AnalyzeOptions, GenRequest};
pub use error::{CliError, CliResult};
pub use input::{parse_input, parse_multiset_file, parse_set_file, Input};
pub use report::AnalysisReport;
