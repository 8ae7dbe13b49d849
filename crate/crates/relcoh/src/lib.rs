//! Batch front end for `relcoh-core`: session files, commands and reports.

pub mod commands;
pub mod report;
pub mod session;

pub use commands::{main_with, run, run_on_text, Cli, Command};
pub use report::{Report, Status};
pub use session::{ParseError, Session};
