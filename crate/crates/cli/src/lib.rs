//! File formats, spectral cache, pipeline orchestration and report emission
//! for the `lphodge` command-line tool.

pub mod cache;
pub mod error;
pub mod input;
pub mod pipeline;
pub mod report;

pub use error::{CliError, ExitStatus};
pub use input::{parse_input, InputFormat, ParsedInput};
pub use pipeline::{run_pipeline, Report, RunConfig, Sections};
pub use report::{emit_report, render_report, OutputFormat};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "LPHODGE_THREADS";
