//! Command line front end for `bonsai-core`: argument parsing, text and
//! JSON output, and the verification suites behind `bonsai verify`.

pub mod cli;
pub mod render;
pub mod suites;
