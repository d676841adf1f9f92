//! Command-line front end: the bundled corpus, the identity audit, and the
//! check, render, eval and units workflows.

pub mod commands;
pub mod corpus;
pub mod identities;

pub use commands::{run, Cli, Outcome};
