//! File formats, reports and the command line for `bmwcert`.
//!
//! The exit-code contract is: 0 when every check passes, 1 when a check
//! fails or the pipeline aborted on a structural property of the operator,
//! and 2 when the input or configuration could not be used.

pub mod cli;
pub mod error;
pub mod job;
pub mod report;
pub mod rmatrix_file;

pub use error::CliError;
pub use job::{run_job, JobConfig, Mode, NuChoice, ReportFormat, Source};
pub use report::{Report, Status};
