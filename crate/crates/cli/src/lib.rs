//! Library side of the command-line front end: graph file parsing and
//! report formatting, kept separate so integration tests can drive them
//! directly.

pub mod graphfile;
pub mod report;
