//! Command-line tools and JSON formats for planar interdiction.

pub mod cli;
pub mod exec;
pub mod io;
