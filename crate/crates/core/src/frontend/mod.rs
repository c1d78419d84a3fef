//! Text format, report rendering and the command-line interface.

pub mod cli;
pub mod format;
pub mod report;

pub use format::{parse, parse_bytes, print, ParseError};
