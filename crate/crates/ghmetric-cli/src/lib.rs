//! Library side of the `ghmetric` command-line tool: the space file
//! format, deterministic corpus generators, and the report format. The
//! binary in `main.rs` is a thin dispatcher over these plus the `ghmetric`
//! crate itself.

pub mod error;
pub mod format;
pub mod generate;
pub mod report;

pub use error::CliError;
