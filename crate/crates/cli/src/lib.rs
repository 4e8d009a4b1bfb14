//! Library half of the `confspace` binary: argument types, command
//! implementations, and the verification suites. Everything returns strings
//! or reports so the commands are directly testable.

pub mod commands;
pub mod output;
pub mod verify;

pub use commands::{
    cmd_betti, cmd_dump_block, cmd_polys, cmd_series, cmd_stable_table, SeriesKind,
};
pub use output::OutputFormat;
pub use verify::{run_suite, Suite, VerifyOptions};
