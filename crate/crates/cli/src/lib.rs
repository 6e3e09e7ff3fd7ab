//! Job parsing and execution behind the `idealcore` binary.

pub mod error;
pub mod job;
pub mod run;

pub use error::JobError;
pub use job::{parse_job, JobSpec};
pub use run::{run_job, Report};
