//! The `agq` command line tool: subcommands, JSON report and DOT output.

pub mod app;
pub mod dot;
pub mod json;

pub use app::run;
