//! Library side of the `su2opt` command: gate parsing, figure data, trace
//! sampling and output formats.

pub mod atlas;
pub mod error;
pub mod gate;
pub mod output;
pub mod synth;
pub mod trace;

pub use error::{CliError, Exit};
