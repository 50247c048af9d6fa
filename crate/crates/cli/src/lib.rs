//! Command-line front end for `cyclotorsion`: matrix-file parsing, report
//! documents and subcommand dispatch. The binary is a thin wrapper around
//! [`app::run`].

pub mod app;
pub mod parse;
pub mod report;
