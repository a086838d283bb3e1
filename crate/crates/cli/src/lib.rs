//! File formats and command-line front end for `causalnet-core`.

mod commands;
pub mod format;
pub mod json;

pub use commands::run;
