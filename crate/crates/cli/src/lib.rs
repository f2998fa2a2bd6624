//! Command-line front end for `partcalc`: JSON documents, Graphviz export
//! and the identity-suite runner.

pub mod app;
pub mod document;
pub mod dot;
pub mod error;
pub mod suites;

pub use error::CliError;
