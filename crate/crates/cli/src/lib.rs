//! Library half of the `specprob` command-line tool: configuration, figure
//! tables and the verification suites.

pub mod config;
pub mod error;
pub mod figures;
pub mod verify;
