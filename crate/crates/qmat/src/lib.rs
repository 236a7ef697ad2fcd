//! File formats and the command line front end for `qmat-core`.

pub mod cli;
pub mod desc;
pub mod error;
pub mod render;

pub use cli::{run, Args, Format, Input, Verb};
pub use error::CliError;
