//! Library half of the `adaptquad` command-line tool.

pub mod config;
pub mod run;

pub use config::{parse_config, Command, ConfigError, Output, RunConfig, OUT_DIR_ENV};
pub use run::{render, run};

/// Exit status for invalid invocations.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status for numerical failures (depth exceeded, non-finite values).
pub const EXIT_NUMERICAL: i32 = 3;
/// Exit status for I/O and other runtime failures.
pub const EXIT_OTHER: i32 = 1;
