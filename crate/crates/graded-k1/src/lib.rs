//! Job files, reports and the command-line driver for graded K₁ computations.
//!
//! A job is a TOML file naming a ring, a shift family and a command; see [`job`] for the
//! schema and [`literal`] for the element syntax.

pub mod error;
pub mod job;
pub mod literal;
pub mod report;
pub mod run;

pub use error::JobError;
pub use job::{emit_job, parse_job, parse_job_with, Command, Format, JobSpec, Overrides};
pub use report::{emit_report, Outcome, Status};
pub use run::run_job;
